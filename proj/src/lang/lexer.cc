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

#include <array>
#include <cctype>

#include "mutalm/errors.h"
#include "mutalm/lang/token.h"

namespace mutalm::lang {
namespace {

constexpr std::array<std::string_view, 10> kKeywords = {
    "class", "int", "boolean", "String", "void",
    "if",    "else", "while",  "do",     "return"};

constexpr std::array<std::string_view, 3> kWordLiterals = {"true", "false",
                                                           "null"};

// Longest match first.
constexpr std::array<std::string_view, 21> kOperators = {
    "++", "--", "+=", "-=", "*=", "/=", "<=", ">=", "==", "!=", "&&",
    "||", "+",  "-",  "*",  "/",  "%",  "<",  ">",  "=",  "!"};

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool IsIdentPart(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool IsSeparator(char c) {
  switch (c) {
    case '(': case ')': case '{': case '}': case '[': case ']':
    case ';': case ',': case '.':
      return true;
    default:
      return false;
  }
}

}  // namespace

const char* TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword: return "keyword";
    case TokenKind::kIdentifier: return "identifier";
    case TokenKind::kLiteral: return "literal";
    case TokenKind::kOperator: return "operator";
    case TokenKind::kSeparator: return "separator";
    case TokenKind::kMask: return "mask";
  }
  return "?";
}

bool IsKeyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

TokenStream Tokenize(std::string_view text) {
  TokenStream out;
  std::size_t pos = 0;
  int line = 1;
  const std::size_t n = text.size();
  auto push = [&](TokenKind kind, std::size_t start, int start_line) {
    out.push_back(Token{std::string(text.substr(start, pos - start)), kind,
                        Span{start, pos - start}, start_line});
  };
  while (pos < n) {
    const char c = text[pos];
    if (c == '\n') {
      ++line;
      ++pos;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++pos;
      continue;
    }
    if (c == '/' && pos + 1 < n && text[pos + 1] == '/') {
      while (pos < n && text[pos] != '\n') ++pos;
      continue;
    }
    if (c == '/' && pos + 1 < n && text[pos + 1] == '*') {
      const std::size_t start = pos;
      const int start_line = line;
      pos += 2;
      while (pos + 1 < n && !(text[pos] == '*' && text[pos + 1] == '/')) {
        if (text[pos] == '\n') ++line;
        ++pos;
      }
      if (pos + 1 >= n) throw LexError(start, start_line, "unterminated comment");
      pos += 2;
      continue;
    }
    const std::size_t start = pos;
    const int start_line = line;
    if (text.substr(pos, kMaskToken.size()) == kMaskToken) {
      pos += kMaskToken.size();
      push(TokenKind::kMask, start, start_line);
      continue;
    }
    if (IsIdentStart(c)) {
      while (pos < n && IsIdentPart(text[pos])) ++pos;
      const std::string_view word = text.substr(start, pos - start);
      TokenKind kind = TokenKind::kIdentifier;
      if (IsKeyword(word)) kind = TokenKind::kKeyword;
      for (auto lit : kWordLiterals) {
        if (lit == word) kind = TokenKind::kLiteral;
      }
      push(kind, start, start_line);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos < n && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos < n && IsIdentStart(text[pos])) {
        throw LexError(pos, line, "malformed number");
      }
      push(TokenKind::kLiteral, start, start_line);
      continue;
    }
    if (c == '"') {
      ++pos;
      while (pos < n && text[pos] != '"') {
        if (text[pos] == '\n') throw LexError(start, start_line, "newline in string literal");
        if (text[pos] == '\\') {
          if (pos + 1 >= n) break;
          const char e = text[pos + 1];
          if (e != '"' && e != '\\' && e != 'n' && e != 't') {
            throw LexError(pos, line, "unknown escape sequence");
          }
          ++pos;
        }
        ++pos;
      }
      if (pos >= n) throw LexError(start, start_line, "unterminated string literal");
      ++pos;
      push(TokenKind::kLiteral, start, start_line);
      continue;
    }
    if (IsSeparator(c)) {
      ++pos;
      push(TokenKind::kSeparator, start, start_line);
      continue;
    }
    bool matched = false;
    for (auto op : kOperators) {
      if (text.substr(pos, op.size()) == op) {
        pos += op.size();
        push(TokenKind::kOperator, start, start_line);
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw LexError(pos, line,
                     std::string("illegal character '") + c + "'");
    }
  }
  return out;
}

std::string JoinLexemes(const TokenStream& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i].lexeme;
  }
  return out;
}

}  // namespace mutalm::lang
