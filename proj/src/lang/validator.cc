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

#include "mutalm/lang/validator.h"

#include <set>

namespace mutalm::lang {
namespace {

const TypeRef kInt{"int", 0};
const TypeRef kBool{"boolean", 0};
const TypeRef kString{"String", 0};
const TypeRef kVoid{"void", 0};
const TypeRef kNull{"null", 0};

bool IsNull(const TypeRef& t) { return t.dims == 0 && t.base == "null"; }

bool Assignable(const TypeRef& to, const TypeRef& from) {
  if (to == from) return true;
  return IsNull(from) && to.IsReference();
}

bool IsLiteralTrue(const Expr& e) {
  return e.kind == ExprKind::kBoolLit && e.bool_value;
}

bool CanComplete(const std::vector<Stmt>& block);

bool CanComplete(const Stmt& s) {
  switch (s.kind) {
    case StmtKind::kReturn:
      return false;
    case StmtKind::kIf:
      return !s.has_else || CanComplete(s.body) || CanComplete(s.else_body);
    case StmtKind::kWhile:
      return !IsLiteralTrue(s.exprs[0]);
    case StmtKind::kDoWhile:
      return CanComplete(s.body) && !IsLiteralTrue(s.exprs[0]);
    default:
      return true;
  }
}

bool CanComplete(const std::vector<Stmt>& block) {
  for (const auto& s : block) {
    if (!CanComplete(s)) return false;
  }
  return true;
}

class Checker {
 public:
  explicit Checker(const SourceUnit& unit) : unit_(unit) {}

  ValidationReport Run() {
    std::set<std::string> class_names;
    for (const auto& cls : unit_.classes) {
      if (!class_names.insert(cls.name).second) {
        Report(cls.span, cls.line, "duplicate class " + cls.name,
               DiagnosticCategory::kNameResolution);
      }
      if (IsBuiltinClass(cls.name)) {
        Report(cls.span, cls.line, "class name clashes with built-in " + cls.name,
               DiagnosticCategory::kNameResolution);
      }
    }
    for (const auto& cls : unit_.classes) CheckClass(cls);
    report_.ok = report_.diagnostics.empty();
    return std::move(report_);
  }

 private:
  void Report(const Span& span, int line, std::string message,
              DiagnosticCategory category) {
    report_.diagnostics.push_back(Diagnostic{span, line, std::move(message), category});
  }

  bool TypeExists(const TypeRef& t) const {
    if (t.base == "int" || t.base == "boolean" || t.base == "String") return true;
    if (t.base == "void") return false;
    return unit_.FindClass(t.base) != nullptr;
  }

  void CheckClass(const ClassDecl& cls) {
    cls_ = &cls;
    std::set<std::string> names;
    for (const auto& f : cls.fields) {
      if (!names.insert(f.name).second) {
        Report(f.span, f.line, "duplicate field " + f.name,
               DiagnosticCategory::kNameResolution);
      }
      if (!TypeExists(f.type)) {
        Report(f.span, f.line, "unknown type " + f.type.ToString(),
               DiagnosticCategory::kNameResolution);
      }
    }
    std::set<std::string> methods;
    for (const auto& m : cls.methods) {
      if (!methods.insert(m.name).second) {
        Report(m.span, m.line, "duplicate method " + m.name,
               DiagnosticCategory::kNameResolution);
      }
      CheckMethod(m);
    }
  }

  void CheckMethod(const Method& m) {
    method_ = &m;
    scopes_.clear();
    scopes_.emplace_back();
    if (!m.return_type.IsVoid() && !TypeExists(m.return_type)) {
      Report(m.span, m.line, "unknown type " + m.return_type.ToString(),
             DiagnosticCategory::kNameResolution);
    }
    for (const auto& p : m.params) {
      if (!TypeExists(p.type)) {
        Report(p.span, m.line, "unknown type " + p.type.ToString(),
               DiagnosticCategory::kNameResolution);
      }
      if (Lookup(p.name)) {
        Report(p.span, m.line, "duplicate parameter " + p.name,
               DiagnosticCategory::kNameResolution);
      }
      scopes_.back().push_back(TypedName{p.name, p.type});
    }
    CheckBlock(m.body);
    if (!m.return_type.IsVoid() && CanComplete(m.body)) {
      Report(m.span, m.line, "missing return in " + m.name,
             DiagnosticCategory::kType);
    }
  }

  const TypeRef* Lookup(const std::string& name) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      for (const auto& v : *it) {
        if (v.name == name) return &v.type;
      }
    }
    return nullptr;
  }

  const TypeRef* LookupVariable(const std::string& name) const {
    if (const TypeRef* local = Lookup(name)) return local;
    if (const Field* f = cls_->FindField(name)) return &f->type;
    return nullptr;
  }

  void CheckBlock(const std::vector<Stmt>& block) {
    scopes_.emplace_back();
    for (const auto& s : block) CheckStmt(s);
    scopes_.pop_back();
  }

  void ExpectType(const Expr& e, const TypeRef& want, const char* what) {
    auto t = TypeOf(e);
    if (t && !Assignable(want, *t)) {
      Report(e.span, e.line,
             std::string(what) + " must be " + want.ToString() + ", found " +
                 t->ToString(),
             DiagnosticCategory::kType);
    }
  }

  void CheckStmt(const Stmt& s) {
    switch (s.kind) {
      case StmtKind::kVarDecl: {
        if (!TypeExists(s.decl_type)) {
          Report(s.span, s.line, "unknown type " + s.decl_type.ToString(),
                 DiagnosticCategory::kNameResolution);
        }
        if (!s.exprs.empty()) ExpectType(s.exprs[0], s.decl_type, "initializer");
        if (Lookup(s.name)) {
          Report(s.span, s.line, "variable " + s.name + " is already defined",
                 DiagnosticCategory::kNameResolution);
        }
        scopes_.back().push_back(TypedName{s.name, s.decl_type});
        return;
      }
      case StmtKind::kAssign: {
        const Expr& target = s.exprs[0];
        auto lt = TypeOf(target);
        auto rt = TypeOf(s.exprs[1]);
        if (lt && !IsAssignableTarget(target)) {
          Report(target.span, s.line, "cannot assign to this expression",
                 DiagnosticCategory::kType);
          return;
        }
        if (!lt || !rt) return;
        if (s.op == "=") {
          if (!Assignable(*lt, *rt)) {
            Report(s.span, s.line,
                   "cannot assign " + rt->ToString() + " to " + lt->ToString(),
                   DiagnosticCategory::kType);
          }
        } else if (s.op == "+=" && lt->IsString()) {
          if (rt->IsVoid()) {
            Report(s.span, s.line, "cannot concatenate void", DiagnosticCategory::kType);
          }
        } else if (!lt->IsInt() || !rt->IsInt()) {
          Report(s.span, s.line, "operator " + s.op + " requires int operands",
                 DiagnosticCategory::kType);
        }
        return;
      }
      case StmtKind::kIf:
        ExpectType(s.exprs[0], kBool, "condition");
        CheckBlock(s.body);
        if (s.has_else) CheckBlock(s.else_body);
        return;
      case StmtKind::kWhile:
        ExpectType(s.exprs[0], kBool, "condition");
        CheckBlock(s.body);
        return;
      case StmtKind::kDoWhile:
        CheckBlock(s.body);
        ExpectType(s.exprs[0], kBool, "condition");
        return;
      case StmtKind::kReturn:
        if (method_->return_type.IsVoid()) {
          if (!s.exprs.empty()) {
            TypeOf(s.exprs[0]);
            Report(s.span, s.line, "void method cannot return a value",
                   DiagnosticCategory::kType);
          }
        } else if (s.exprs.empty()) {
          Report(s.span, s.line, "missing return value", DiagnosticCategory::kType);
        } else {
          ExpectType(s.exprs[0], method_->return_type, "return value");
        }
        return;
      case StmtKind::kExprStmt: {
        const Expr& e = s.exprs[0];
        TypeOf(e);
        const bool is_statement =
            e.kind == ExprKind::kCall ||
            (e.kind == ExprKind::kUnary && (e.text == "++" || e.text == "--"));
        if (!is_statement) {
          Report(e.span, s.line, "not a statement", DiagnosticCategory::kType);
        }
        return;
      }
    }
  }

  bool IsStaticRef(const Expr& e) const {
    return e.kind == ExprKind::kName && !LookupVariable(e.text) &&
           IsBuiltinClass(e.text);
  }

  bool IsAssignableTarget(const Expr& e) const {
    switch (e.kind) {
      case ExprKind::kName:
        return LookupVariable(e.text) != nullptr;
      case ExprKind::kIndex:
        return true;
      case ExprKind::kField:
        // Array length and built-in constants are read-only.
        return !IsStaticRef(e.children[0]) && !array_field_.count(&e);
      default:
        return false;
    }
  }

  std::optional<TypeRef> Fail(const Expr& e, std::string message,
                              DiagnosticCategory category) {
    Report(e.span, e.line, std::move(message), category);
    return std::nullopt;
  }

  std::optional<TypeRef> TypeOf(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit: return kInt;
      case ExprKind::kBoolLit: return kBool;
      case ExprKind::kStringLit: return kString;
      case ExprKind::kNullLit: return kNull;
      case ExprKind::kMask:
        return Fail(e, "mask placeholder in program", DiagnosticCategory::kParse);
      case ExprKind::kName: {
        if (const TypeRef* t = LookupVariable(e.text)) return *t;
        if (IsBuiltinClass(e.text) || unit_.FindClass(e.text)) {
          return Fail(e, "type " + e.text + " used as a value",
                      DiagnosticCategory::kType);
        }
        return Fail(e, "cannot resolve symbol " + e.text,
                    DiagnosticCategory::kNameResolution);
      }
      case ExprKind::kUnary: return TypeOfUnary(e);
      case ExprKind::kBinary: return TypeOfBinary(e);
      case ExprKind::kField: return TypeOfField(e);
      case ExprKind::kCall: return TypeOfCall(e);
      case ExprKind::kIndex: {
        auto at = TypeOf(e.children[0]);
        auto it = TypeOf(e.children[1]);
        if (!at || !it) return std::nullopt;
        if (!it->IsInt()) return Fail(e.children[1], "array index must be int", DiagnosticCategory::kType);
        if (!at->IsArray()) return Fail(e, "indexing a non-array " + at->ToString(), DiagnosticCategory::kType);
        return at->Element();
      }
    }
    return std::nullopt;
  }

  std::optional<TypeRef> TypeOfUnary(const Expr& e) {
    auto t = TypeOf(e.children[0]);
    if (!t) return std::nullopt;
    if (e.text == "!") {
      if (!t->IsBoolean()) return Fail(e, "operator ! requires boolean", DiagnosticCategory::kType);
      return kBool;
    }
    if (!t->IsInt()) return Fail(e, "operator " + e.text + " requires int", DiagnosticCategory::kType);
    if ((e.text == "++" || e.text == "--") && !IsAssignableTarget(e.children[0])) {
      return Fail(e, "operand of " + e.text + " must be a variable", DiagnosticCategory::kType);
    }
    return kInt;
  }

  std::optional<TypeRef> TypeOfBinary(const Expr& e) {
    auto lt = TypeOf(e.children[0]);
    auto rt = TypeOf(e.children[1]);
    if (!lt || !rt) return std::nullopt;
    const std::string& op = e.text;
    if (op == "&&" || op == "||") {
      if (lt->IsBoolean() && rt->IsBoolean()) return kBool;
      return Fail(e, "operator " + op + " requires boolean operands", DiagnosticCategory::kType);
    }
    if (op == "==" || op == "!=") {
      if (lt->IsVoid() || rt->IsVoid()) {
        return Fail(e, "cannot compare void", DiagnosticCategory::kType);
      }
      if (*lt == *rt || (IsNull(*lt) && rt->IsReference()) ||
          (IsNull(*rt) && lt->IsReference())) {
        return kBool;
      }
      return Fail(e, "incomparable types " + lt->ToString() + " and " + rt->ToString(),
                  DiagnosticCategory::kType);
    }
    if (op == "+" && (lt->IsString() || rt->IsString())) {
      if (lt->IsVoid() || rt->IsVoid()) {
        return Fail(e, "cannot concatenate void", DiagnosticCategory::kType);
      }
      return kString;
    }
    if (!lt->IsInt() || !rt->IsInt()) {
      return Fail(e, "operator " + op + " requires int operands", DiagnosticCategory::kType);
    }
    if (op == "<" || op == "<=" || op == ">" || op == ">=") return kBool;
    return kInt;
  }

  std::optional<TypeRef> TypeOfField(const Expr& e) {
    const Expr& obj = e.children[0];
    if (IsStaticRef(obj)) {
      if (obj.text == "Integer" && (e.text == "MAX_VALUE" || e.text == "MIN_VALUE")) {
        return kInt;
      }
      return Fail(e, "unknown static member " + obj.text + "." + e.text,
                  DiagnosticCategory::kNameResolution);
    }
    auto ot = TypeOf(obj);
    if (!ot) return std::nullopt;
    if (ot->IsArray()) {
      if (e.text == "length") {
        array_field_.insert(&e);
        return kInt;
      }
      return Fail(e, "arrays have no field " + e.text, DiagnosticCategory::kNameResolution);
    }
    const ClassDecl* cls = ot->dims == 0 ? unit_.FindClass(ot->base) : nullptr;
    if (!cls) return Fail(e, "type " + ot->ToString() + " has no fields", DiagnosticCategory::kType);
    const Field* f = cls->FindField(e.text);
    if (!f) {
      return Fail(e, "cannot resolve field " + e.text + " in " + cls->name,
                  DiagnosticCategory::kNameResolution);
    }
    return f->type;
  }

  std::optional<TypeRef> CheckArgs(const Expr& call, const std::vector<TypeRef>& params,
                                   const TypeRef& result) {
    const std::size_t argc = call.children.size() - call.FirstArg();
    bool ok = true;
    std::vector<std::optional<TypeRef>> args;
    for (std::size_t i = call.FirstArg(); i < call.children.size(); ++i) {
      args.push_back(TypeOf(call.children[i]));
    }
    if (argc != params.size()) {
      return Fail(call, call.text + " expects " + std::to_string(params.size()) +
                            " arguments, found " + std::to_string(argc),
                  DiagnosticCategory::kType);
    }
    for (std::size_t i = 0; i < argc; ++i) {
      if (!args[i]) {
        ok = false;
      } else if (!Assignable(params[i], *args[i])) {
        Report(call.children[call.FirstArg() + i].span, call.line,
               "argument " + std::to_string(i + 1) + " of " + call.text +
                   " must be " + params[i].ToString(),
               DiagnosticCategory::kType);
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return result;
  }

  std::optional<TypeRef> CheckUserCall(const Expr& call, const ClassDecl& cls) {
    const Method* m = cls.FindMethod(call.text);
    if (!m) {
      for (std::size_t i = call.FirstArg(); i < call.children.size(); ++i) {
        TypeOf(call.children[i]);
      }
      return Fail(call, "cannot resolve method " + call.text + " in " + cls.name,
                  DiagnosticCategory::kNameResolution);
    }
    std::vector<TypeRef> params;
    for (const auto& p : m->params) params.push_back(p.type);
    return CheckArgs(call, params, m->return_type);
  }

  std::optional<TypeRef> TypeOfCall(const Expr& e) {
    if (!e.has_receiver) return CheckUserCall(e, *cls_);
    const Expr& recv = e.children[0];
    if (IsStaticRef(recv)) {
      if (recv.text == "Math") {
        if (e.text == "abs") return CheckArgs(e, {kInt}, kInt);
        if (e.text == "max" || e.text == "min") return CheckArgs(e, {kInt, kInt}, kInt);
        if (e.text == "random") return CheckArgs(e, {}, kInt);
      }
      for (std::size_t i = 1; i < e.children.size(); ++i) TypeOf(e.children[i]);
      return Fail(e, "unknown static method " + recv.text + "." + e.text,
                  DiagnosticCategory::kNameResolution);
    }
    auto rt = TypeOf(recv);
    if (!rt) {
      for (std::size_t i = 1; i < e.children.size(); ++i) TypeOf(e.children[i]);
      return std::nullopt;
    }
    if (rt->IsString()) {
      if (e.text == "length") return CheckArgs(e, {}, kInt);
      if (e.text == "equals") return CheckArgs(e, {kString}, kBool);
    }
    const ClassDecl* cls = rt->dims == 0 ? unit_.FindClass(rt->base) : nullptr;
    if (!cls) {
      for (std::size_t i = 1; i < e.children.size(); ++i) TypeOf(e.children[i]);
      return Fail(e, "cannot resolve method " + e.text + " on " + rt->ToString(),
                  DiagnosticCategory::kNameResolution);
    }
    return CheckUserCall(e, *cls);
  }

  const SourceUnit& unit_;
  const ClassDecl* cls_ = nullptr;
  const Method* method_ = nullptr;
  std::vector<std::vector<TypedName>> scopes_;
  std::set<const Expr*> array_field_;
  ValidationReport report_;
};

bool CollectVisible(const std::vector<Stmt>& block, int stmt_id,
                    std::vector<TypedName>& scope) {
  const std::size_t mark = scope.size();
  for (const auto& s : block) {
    if (s.id == stmt_id) return true;
    if (CollectVisible(s.body, stmt_id, scope)) return true;
    if (CollectVisible(s.else_body, stmt_id, scope)) return true;
    if (s.kind == StmtKind::kVarDecl) scope.push_back(TypedName{s.name, s.decl_type});
  }
  scope.resize(mark);
  return false;
}

}  // namespace

const char* CategoryName(DiagnosticCategory category) {
  switch (category) {
    case DiagnosticCategory::kParse: return "parse";
    case DiagnosticCategory::kNameResolution: return "name-resolution";
    case DiagnosticCategory::kType: return "type";
  }
  return "?";
}

bool IsBuiltinClass(const std::string& name) {
  return name == "Math" || name == "Integer";
}

ValidationReport Validate(const SourceUnit& unit) { return Checker(unit).Run(); }

std::vector<TypedName> VisibleVariables(const SourceUnit& unit, int stmt_id) {
  for (const auto& cls : unit.classes) {
    for (const auto& m : cls.methods) {
      std::vector<TypedName> scope;
      for (const auto& f : cls.fields) scope.push_back(TypedName{f.name, f.type});
      for (const auto& p : m.params) scope.push_back(TypedName{p.name, p.type});
      if (CollectVisible(m.body, stmt_id, scope)) return scope;
    }
  }
  return {};
}

}  // namespace mutalm::lang
