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

#ifndef MUTALM_LANG_PARSER_H_
#define MUTALM_LANG_PARSER_H_

#include <string>
#include <string_view>

#include "mutalm/lang/ast.h"

namespace mutalm::lang {

// Parses a MiniJ compilation unit (one or more classes). Throws LexError or
// ParseError. The returned unit owns a copy of `text`.
SourceUnit Parse(std::string_view text);

// Parses a standalone expression; spans index into `text`.
Expr ParseExpression(std::string_view text);

// Binary operator precedence, higher binds tighter; 0 for non-binary.
int BinaryPrecedence(std::string_view op);

// parse(render(unit)): the form every pipeline stage works on, so that
// spans and line numbers refer to the canonical text.
SourceUnit Canonicalize(const SourceUnit& unit);

}  // namespace mutalm::lang

#endif  // MUTALM_LANG_PARSER_H_
