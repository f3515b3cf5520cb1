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

#include "mutalm/seeder.h"

#include <set>

#include "mutalm/errors.h"
#include "mutalm/lang/parser.h"
#include "mutalm/lang/printer.h"

namespace mutalm::seeder {

using lang::Expr;
using lang::ExprKind;
using lang::Stmt;
using lang::StmtKind;

const char* SchemeName(Scheme scheme) {
  return scheme == Scheme::kClassConditions ? "class-conditions" : "variables";
}

const char* OrderName(Order order) {
  return order == Order::kOriginalFirst ? "original-first" : "seeded-first";
}

namespace {

Expr MakeBinary(const std::string& op, Expr lhs, Expr rhs) {
  Expr e;
  e.kind = ExprKind::kBinary;
  e.text = op;
  e.children.push_back(std::move(lhs));
  e.children.push_back(std::move(rhs));
  return e;
}

Expr MakeUnary(const std::string& op, Expr operand) {
  Expr e;
  e.kind = ExprKind::kUnary;
  e.text = op;
  e.children.push_back(std::move(operand));
  return e;
}

Expr MakeName(const std::string& name) {
  Expr e;
  e.kind = ExprKind::kName;
  e.text = name;
  return e;
}

bool IsConditionStmt(StmtKind kind) {
  return kind == StmtKind::kIf || kind == StmtKind::kWhile || kind == StmtKind::kDoWhile;
}

constexpr const char* kLogicalOps[] = {"&&", "||"};
constexpr Order kOrders[] = {Order::kOriginalFirst, Order::kSeededFirst};

}  // namespace

std::vector<ConditionSite> CollectConditionSites(const lang::SourceUnit& unit) {
  std::vector<ConditionSite> sites;
  for (const auto& cls : unit.classes) {
    for (const auto& m : cls.methods) {
      const bool boolean_method = m.return_type.IsBoolean();
      lang::ForEachStmt(m.body, [&](const Stmt& s) {
        const bool cond = IsConditionStmt(s.kind);
        const bool ret = s.kind == StmtKind::kReturn && boolean_method && !s.exprs.empty();
        if (!cond && !ret) return;
        sites.push_back(ConditionSite{s.id, s.kind, cls.name, s.line, s.exprs[0]});
      });
    }
  }
  return sites;
}

bool IsNullCheck(const Expr& expr) {
  if (expr.kind != ExprKind::kBinary || (expr.text != "==" && expr.text != "!=")) {
    return false;
  }
  return expr.children[0].kind == ExprKind::kNullLit ||
         expr.children[1].kind == ExprKind::kNullLit;
}

std::string ConditionKey(const Expr& expr) {
  return lang::JoinLexemes(lang::Tokenize(lang::RenderExpr(expr)));
}

std::vector<Expr> CollectClassConditions(const lang::SourceUnit& unit,
                                         const ConditionSite& target) {
  const std::string own = ConditionKey(target.condition);
  std::set<std::string> seen{own};
  std::vector<Expr> out;
  for (const auto& site : CollectConditionSites(unit)) {
    if (site.class_name != target.class_name || IsNullCheck(site.condition)) continue;
    if (seen.insert(ConditionKey(site.condition)).second) out.push_back(site.condition);
  }
  return out;
}

Expr SeededCondition::Combined() const {
  Expr seeded = negated ? MakeUnary("!", seeded_expr) : seeded_expr;
  if (order == Order::kOriginalFirst) return MakeBinary(op, original_expr, std::move(seeded));
  return MakeBinary(op, std::move(seeded), original_expr);
}

std::string SeededCondition::Render() const { return lang::RenderExpr(Combined()); }

std::vector<SeededCondition> SeedWithConditions(const Expr& exp_t,
                                                const std::vector<Expr>& s_e) {
  std::vector<SeededCondition> out;
  out.reserve(8 * s_e.size());
  for (const auto& exp_i : s_e) {
    for (Order order : kOrders) {
      for (const char* op : kLogicalOps) {
        for (bool negated : {false, true}) {
          SeededCondition c;
          c.original_expr = exp_t;
          c.seeded_expr = exp_i;
          c.op = op;
          c.negated = negated;
          c.order = order;
          c.scheme = Scheme::kClassConditions;
          out.push_back(std::move(c));
        }
      }
    }
  }
  return out;
}

std::vector<std::string> RelOps(const lang::TypeRef& type) {
  if (type.IsInt()) return {"<", "<=", ">", ">=", "==", "!="};
  return {"==", "!="};
}

std::vector<SeededCondition> SeedWithVariables(const Expr& exp_t,
                                               const std::vector<lang::TypedName>& scope) {
  std::vector<const lang::TypedName*> vars_t;
  std::set<std::string> seen;
  lang::ForEachExpr(exp_t, [&](const Expr& e) {
    if (e.kind != ExprKind::kName || seen.count(e.text) != 0) return;
    for (const auto& v : scope) {
      if (v.name == e.text) {
        seen.insert(e.text);
        vars_t.push_back(&v);
        break;
      }
    }
  });
  std::vector<SeededCondition> out;
  for (const auto* var_t : vars_t) {
    for (const auto& var_i : scope) {
      if (var_i.name == var_t->name || !(var_i.type == var_t->type)) continue;
      for (const auto& rel : RelOps(var_t->type)) {
        for (Order order : kOrders) {
          for (const char* op : kLogicalOps) {
            SeededCondition c;
            c.original_expr = exp_t;
            c.seeded_expr = MakeBinary(rel, MakeName(var_t->name), MakeName(var_i.name));
            c.op = op;
            c.order = order;
            c.scheme = Scheme::kVariables;
            out.push_back(std::move(c));
          }
        }
      }
    }
  }
  return out;
}

bool Apply(const lang::SourceUnit& unit, const SeededCondition& condition,
           SeededProgram& out) {
  lang::SourceUnit copy = unit;
  Stmt* stmt = lang::FindStmt(copy, condition.statement_id);
  if (stmt == nullptr || stmt->exprs.empty()) {
    throw Error("seeded condition refers to missing statement " +
                std::to_string(condition.statement_id));
  }
  stmt->exprs[0] = condition.Combined();
  lang::SourceUnit seeded;
  try {
    seeded = lang::Parse(lang::Render(copy));
  } catch (const Error&) {
    return false;
  }
  if (!lang::Validate(seeded).ok) return false;
  const Stmt* placed = lang::FindStmt(seeded, condition.statement_id);
  const Expr& combined = placed->exprs[0];
  const Expr& part =
      combined.children[condition.order == Order::kOriginalFirst ? 1 : 0];
  out.condition = condition;
  out.mask_sites = targets::CollectExprTargets(seeded, part, *placed);
  out.unit = std::move(seeded);
  return true;
}

SeedingResult SeedUnit(const lang::SourceUnit& unit) {
  SeedingResult result;
  for (const auto& site : CollectConditionSites(unit)) {
    std::vector<SeededCondition> candidates =
        SeedWithConditions(site.condition, CollectClassConditions(unit, site));
    if (site.statement_kind == StmtKind::kIf) {
      auto by_vars = SeedWithVariables(site.condition,
                                       lang::VisibleVariables(unit, site.statement_id));
      candidates.insert(candidates.end(), std::make_move_iterator(by_vars.begin()),
                        std::make_move_iterator(by_vars.end()));
    }
    for (auto& c : candidates) {
      c.statement_kind = site.statement_kind;
      c.statement_id = site.statement_id;
      ++result.enumerated;
      SeededProgram program;
      if (Apply(unit, c, program)) {
        result.programs.push_back(std::move(program));
      } else {
        ++result.invalid;
      }
    }
  }
  return result;
}

}  // namespace mutalm::seeder
