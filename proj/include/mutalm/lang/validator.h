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

#ifndef MUTALM_LANG_VALIDATOR_H_
#define MUTALM_LANG_VALIDATOR_H_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mutalm/lang/ast.h"

namespace mutalm::lang {

enum class DiagnosticCategory { kParse, kNameResolution, kType };

const char* CategoryName(DiagnosticCategory category);

struct Diagnostic {
  Span span;
  int line = 0;
  std::string message;
  DiagnosticCategory category = DiagnosticCategory::kType;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Diagnostic> diagnostics;
};

// MiniJ's stand-in for "the compiler accepts it": every name resolves, every
// expression type-checks, every path of a non-void method returns, and no
// mask placeholder remains. Diagnostics come out in source order.
ValidationReport Validate(const SourceUnit& unit);

// Built-in static members reachable through type names.
bool IsBuiltinClass(const std::string& name);

struct TypedName {
  std::string name;
  TypeRef type;
};

// Variables visible at the start of statement `stmt_id`: fields of the
// enclosing class, then method parameters, then locals declared earlier in
// enclosing blocks. Empty when the statement does not exist.
std::vector<TypedName> VisibleVariables(const SourceUnit& unit, int stmt_id);

}  // namespace mutalm::lang

#endif  // MUTALM_LANG_VALIDATOR_H_
