// Copyright 2026 The MutaLM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MUTALM_LANG_TOKEN_H_
#define MUTALM_LANG_TOKEN_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mutalm::lang {

inline constexpr std::string_view kMaskToken = "<mask>";

// Byte range in the source text a node or token was read from.
struct Span {
  std::size_t offset = 0;
  std::size_t length = 0;

  std::size_t end() const { return offset + length; }
  bool Contains(const Span& other) const {
    return other.offset >= offset && other.end() <= end();
  }
  friend bool operator==(const Span&, const Span&) = default;
};

enum class TokenKind { kKeyword, kIdentifier, kLiteral, kOperator, kSeparator, kMask };

const char* TokenKindName(TokenKind kind);

struct Token {
  std::string lexeme;
  TokenKind kind = TokenKind::kSeparator;
  Span span;
  int line = 1;
};

using TokenStream = std::vector<Token>;

// Lexes MiniJ source. Comments and whitespace are dropped; "<mask>" is
// returned as a single kMask token. Throws LexError on illegal input.
TokenStream Tokenize(std::string_view text);

// Joins lexemes with single spaces.
std::string JoinLexemes(const TokenStream& tokens);

bool IsKeyword(std::string_view word);

}  // namespace mutalm::lang

#endif  // MUTALM_LANG_TOKEN_H_
