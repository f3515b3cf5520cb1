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

#include "mutalm/lang/ast.h"

namespace mutalm::lang {

std::string TypeRef::ToString() const {
  std::string out = base;
  for (int i = 0; i < dims; ++i) out += "[]";
  return out;
}

const char* StmtKindName(StmtKind kind) {
  switch (kind) {
    case StmtKind::kVarDecl: return "declaration";
    case StmtKind::kAssign: return "assignment";
    case StmtKind::kIf: return "if";
    case StmtKind::kWhile: return "while";
    case StmtKind::kDoWhile: return "do";
    case StmtKind::kReturn: return "return";
    case StmtKind::kExprStmt: return "expression";
  }
  return "?";
}

const Method* ClassDecl::FindMethod(const std::string& method_name) const {
  for (const auto& m : methods) {
    if (m.name == method_name) return &m;
  }
  return nullptr;
}

const Field* ClassDecl::FindField(const std::string& field_name) const {
  for (const auto& f : fields) {
    if (f.name == field_name) return &f;
  }
  return nullptr;
}

const ClassDecl* SourceUnit::FindClass(const std::string& class_name) const {
  for (const auto& c : classes) {
    if (c.name == class_name) return &c;
  }
  return nullptr;
}

bool StructurallyEqual(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case ExprKind::kIntLit:
      if (a.int_value != b.int_value) return false;
      break;
    case ExprKind::kBoolLit:
      if (a.bool_value != b.bool_value) return false;
      break;
    case ExprKind::kCall:
      if (a.has_receiver != b.has_receiver || a.text != b.text) return false;
      break;
    case ExprKind::kNullLit:
    case ExprKind::kIndex:
    case ExprKind::kMask:
      break;
    default:
      if (a.text != b.text) return false;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!StructurallyEqual(a.children[i], b.children[i])) return false;
  }
  return true;
}

namespace {

bool BlocksEqual(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!StructurallyEqual(a[i], b[i])) return false;
  }
  return true;
}

void WalkStmts(const std::vector<Stmt>& block,
               const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : block) {
    fn(s);
    WalkStmts(s.body, fn);
    WalkStmts(s.else_body, fn);
  }
}

Stmt* FindIn(std::vector<Stmt>& block, int id) {
  for (auto& s : block) {
    if (s.id == id) return &s;
    if (auto* found = FindIn(s.body, id)) return found;
    if (auto* found = FindIn(s.else_body, id)) return found;
  }
  return nullptr;
}

}  // namespace

bool StructurallyEqual(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind || a.has_else != b.has_else) return false;
  if (a.kind == StmtKind::kVarDecl &&
      (a.decl_type != b.decl_type || a.name != b.name)) {
    return false;
  }
  if (a.kind == StmtKind::kAssign && a.op != b.op) return false;
  if (a.exprs.size() != b.exprs.size()) return false;
  for (std::size_t i = 0; i < a.exprs.size(); ++i) {
    if (!StructurallyEqual(a.exprs[i], b.exprs[i])) return false;
  }
  return BlocksEqual(a.body, b.body) && BlocksEqual(a.else_body, b.else_body);
}

bool StructurallyEqual(const SourceUnit& a, const SourceUnit& b) {
  if (a.classes.size() != b.classes.size()) return false;
  for (std::size_t c = 0; c < a.classes.size(); ++c) {
    const auto& ca = a.classes[c];
    const auto& cb = b.classes[c];
    if (ca.name != cb.name || ca.fields.size() != cb.fields.size() ||
        ca.methods.size() != cb.methods.size()) {
      return false;
    }
    for (std::size_t f = 0; f < ca.fields.size(); ++f) {
      if (ca.fields[f].type != cb.fields[f].type ||
          ca.fields[f].name != cb.fields[f].name) {
        return false;
      }
    }
    for (std::size_t m = 0; m < ca.methods.size(); ++m) {
      const auto& ma = ca.methods[m];
      const auto& mb = cb.methods[m];
      if (ma.name != mb.name || ma.return_type != mb.return_type ||
          ma.params.size() != mb.params.size()) {
        return false;
      }
      for (std::size_t p = 0; p < ma.params.size(); ++p) {
        if (ma.params[p].type != mb.params[p].type ||
            ma.params[p].name != mb.params[p].name) {
          return false;
        }
      }
      if (!BlocksEqual(ma.body, mb.body)) return false;
    }
  }
  return true;
}

void ForEachStmt(const std::vector<Stmt>& block,
                 const std::function<void(const Stmt&)>& fn) {
  WalkStmts(block, fn);
}

void ForEachExpr(const Expr& root, const std::function<void(const Expr&)>& fn) {
  fn(root);
  for (const auto& child : root.children) ForEachExpr(child, fn);
}

Stmt* FindStmt(SourceUnit& unit, int id) {
  for (auto& c : unit.classes) {
    for (auto& m : c.methods) {
      if (auto* s = FindIn(m.body, id)) return s;
    }
  }
  return nullptr;
}

const Stmt* FindStmt(const SourceUnit& unit, int id) {
  return FindStmt(const_cast<SourceUnit&>(unit), id);
}

}  // namespace mutalm::lang
