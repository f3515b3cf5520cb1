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

#ifndef MUTALM_SEEDER_H_
#define MUTALM_SEEDER_H_

#include <string>
#include <vector>

#include "mutalm/lang/ast.h"
#include "mutalm/lang/validator.h"
#include "mutalm/targets.h"

// Condition seeding: a condition c becomes "c op [!](s)" or "[!](s) op c"
// before its new tokens are masked, giving second-order mutants.
namespace mutalm::seeder {

enum class Scheme { kClassConditions, kVariables };
enum class Order { kOriginalFirst, kSeededFirst };

const char* SchemeName(Scheme scheme);
const char* OrderName(Order order);

// A condition that can be extended: the condition of an if, while or
// do-while, or the returned expression of a boolean method.
struct ConditionSite {
  int statement_id = -1;
  lang::StmtKind statement_kind = lang::StmtKind::kIf;
  std::string class_name;
  int line = 0;
  lang::Expr condition;
};

std::vector<ConditionSite> CollectConditionSites(const lang::SourceUnit& unit);

// "x == null", "null != x" and the like at the top level.
bool IsNullCheck(const lang::Expr& expr);

// Token-level identity of an expression (whitespace and parentheses as
// printed canonically).
std::string ConditionKey(const lang::Expr& expr);

// Every other condition of the site's class, minus null checks and minus
// anything token-equal to the site's own condition, de-duplicated, in
// source order.
std::vector<lang::Expr> CollectClassConditions(const lang::SourceUnit& unit,
                                               const ConditionSite& target);

struct SeededCondition {
  lang::Expr original_expr;
  lang::Expr seeded_expr;  // without the negation
  std::string op;          // "&&" or "||"
  bool negated = false;
  Order order = Order::kOriginalFirst;
  Scheme scheme = Scheme::kClassConditions;
  lang::StmtKind statement_kind = lang::StmtKind::kIf;
  int statement_id = -1;

  // The combined condition.
  lang::Expr Combined() const;
  std::string Render() const;
};

// 2 orders x 2 ops x 2 negation states per element of s_e.
std::vector<SeededCondition> SeedWithConditions(const lang::Expr& exp_t,
                                                const std::vector<lang::Expr>& s_e);

// Relational operators applicable to a type: all six for int, == and !=
// otherwise.
std::vector<std::string> RelOps(const lang::TypeRef& type);

// For each distinct variable of exp_t found in scope and each other scope
// variable of the same type: |RelOps| x 2 orders x 2 ops, no negation.
std::vector<SeededCondition> SeedWithVariables(const lang::Expr& exp_t,
                                               const std::vector<lang::TypedName>& scope);

// A seeded condition put in place: the canonical program with the combined
// condition and the targets inside the seeded part (its negation included).
struct SeededProgram {
  SeededCondition condition;
  lang::SourceUnit unit;
  std::vector<targets::MutationTarget> mask_sites;
};

// Returns false when the combined program does not validate.
bool Apply(const lang::SourceUnit& unit, const SeededCondition& condition,
           SeededProgram& out);

struct SeedingResult {
  std::vector<SeededProgram> programs;
  int enumerated = 0;
  int invalid = 0;
};

// Both schemes over every condition site of a canonical unit. Scheme 2 is
// applied to if conditions only.
SeedingResult SeedUnit(const lang::SourceUnit& unit);

}  // namespace mutalm::seeder

#endif  // MUTALM_SEEDER_H_
