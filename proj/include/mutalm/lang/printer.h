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

#ifndef MUTALM_LANG_PRINTER_H_
#define MUTALM_LANG_PRINTER_H_

#include <string>

#include "mutalm/lang/ast.h"

namespace mutalm::lang {

// Canonical formatting: four-space indentation, one statement per line,
// braces on every body, parentheses only where precedence requires them.
std::string Render(const SourceUnit& unit);

std::string RenderExpr(const Expr& expr);

std::string QuoteString(const std::string& value);

}  // namespace mutalm::lang

#endif  // MUTALM_LANG_PRINTER_H_
