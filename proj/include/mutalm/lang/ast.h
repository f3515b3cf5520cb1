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

#ifndef MUTALM_LANG_AST_H_
#define MUTALM_LANG_AST_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mutalm/lang/token.h"

// MiniJ abstract syntax. Nodes are plain values; copying a subtree is how
// mutated programs are built. Spans refer to the text the unit was parsed
// from and are ignored by structural comparison.
namespace mutalm::lang {

struct TypeRef {
  std::string base;  // "int", "boolean", "String", "void" or a class name
  int dims = 0;      // array rank

  bool IsArray() const { return dims > 0; }
  bool IsInt() const { return dims == 0 && base == "int"; }
  bool IsBoolean() const { return dims == 0 && base == "boolean"; }
  bool IsString() const { return dims == 0 && base == "String"; }
  bool IsVoid() const { return dims == 0 && base == "void"; }
  // Values of reference types may be null.
  bool IsReference() const { return dims > 0 || !(IsInt() || IsBoolean() || IsVoid()); }
  TypeRef Element() const { return TypeRef{base, dims - 1}; }
  std::string ToString() const;

  friend bool operator==(const TypeRef&, const TypeRef&) = default;
};

enum class ExprKind {
  kIntLit,
  kBoolLit,
  kStringLit,
  kNullLit,
  kName,
  kUnary,   // children[0] operand; op in `text`
  kBinary,  // children[0] lhs, children[1] rhs; op in `text`
  kField,   // children[0] object; field name in `text`
  kCall,    // [receiver,] args...; method name in `text`
  kIndex,   // children[0] array, children[1] index
  kMask,    // placeholder; never valid in a final program
};

struct Expr {
  ExprKind kind = ExprKind::kNullLit;
  // Operator, name, or decoded string literal value.
  std::string text;
  std::int64_t int_value = 0;
  bool bool_value = false;
  bool has_receiver = false;  // kCall only
  std::vector<Expr> children;
  Span span;
  // The node's own token: operator, field/method name, or the literal.
  Span token_span;
  int line = 0;

  // Call arguments, skipping the receiver.
  std::size_t FirstArg() const { return has_receiver ? 1 : 0; }
};

enum class StmtKind { kVarDecl, kAssign, kIf, kWhile, kDoWhile, kReturn, kExprStmt };

const char* StmtKindName(StmtKind kind);

struct Stmt {
  StmtKind kind = StmtKind::kExprStmt;
  // kVarDecl: declared type and name; exprs holds the optional initializer.
  TypeRef decl_type;
  std::string name;
  // kAssign: "=", "+=", "-=", "*=", "/=". op_span covers the operator token.
  std::string op;
  Span op_span;
  // kAssign: [target, value]; kIf/kWhile/kDoWhile: [condition];
  // kReturn: [] or [value]; kExprStmt: [expr].
  std::vector<Expr> exprs;
  std::vector<Stmt> body;       // then-branch or loop body
  std::vector<Stmt> else_body;  // kIf only
  bool has_else = false;
  Span span;
  int line = 0;
  int id = -1;  // pre-order index within the unit, assigned by the parser
};

struct Param {
  TypeRef type;
  std::string name;
  Span span;
};

struct Field {
  TypeRef type;
  std::string name;
  Span span;
  int line = 0;
};

struct Method {
  TypeRef return_type;
  std::string name;
  std::vector<Param> params;
  std::vector<Stmt> body;
  Span span;
  int line = 0;
};

struct ClassDecl {
  std::string name;
  std::vector<Field> fields;
  std::vector<Method> methods;
  Span span;
  int line = 0;

  const Method* FindMethod(const std::string& method_name) const;
  const Field* FindField(const std::string& field_name) const;
};

struct SourceUnit {
  std::vector<ClassDecl> classes;
  // Text the unit was parsed from; all spans index into it.
  std::string source;

  const ClassDecl* FindClass(const std::string& class_name) const;
};

bool StructurallyEqual(const Expr& a, const Expr& b);
bool StructurallyEqual(const Stmt& a, const Stmt& b);
bool StructurallyEqual(const SourceUnit& a, const SourceUnit& b);

// Pre-order walks. The callbacks receive the enclosing statement as well.
void ForEachStmt(const std::vector<Stmt>& block,
                 const std::function<void(const Stmt&)>& fn);
void ForEachExpr(const Expr& root, const std::function<void(const Expr&)>& fn);

// Finds a statement by id; nullptr when absent.
Stmt* FindStmt(SourceUnit& unit, int id);
const Stmt* FindStmt(const SourceUnit& unit, int id);

}  // namespace mutalm::lang

#endif  // MUTALM_LANG_AST_H_
