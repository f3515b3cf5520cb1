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

#include "mutalm/lang/printer.h"

#include "mutalm/lang/parser.h"

namespace mutalm::lang {
namespace {

constexpr int kUnaryPrecedence = 7;
constexpr int kPostfixPrecedence = 8;

int Precedence(const Expr& e) {
  switch (e.kind) {
    case ExprKind::kBinary: return BinaryPrecedence(e.text);
    case ExprKind::kUnary: return kUnaryPrecedence;
    default: return kPostfixPrecedence + 1;
  }
}

void EmitExpr(const Expr& e, std::string& out);

void EmitWrapped(const Expr& e, bool wrap, std::string& out) {
  if (wrap) out += '(';
  EmitExpr(e, out);
  if (wrap) out += ')';
}

void EmitArgs(const Expr& call, std::string& out) {
  out += '(';
  for (std::size_t i = call.FirstArg(); i < call.children.size(); ++i) {
    if (i > call.FirstArg()) out += ", ";
    EmitExpr(call.children[i], out);
  }
  out += ')';
}

void EmitExpr(const Expr& e, std::string& out) {
  switch (e.kind) {
    case ExprKind::kIntLit:
      out += std::to_string(e.int_value);
      return;
    case ExprKind::kBoolLit:
      out += e.bool_value ? "true" : "false";
      return;
    case ExprKind::kStringLit:
      out += QuoteString(e.text);
      return;
    case ExprKind::kNullLit:
      out += "null";
      return;
    case ExprKind::kName:
      out += e.text;
      return;
    case ExprKind::kMask:
      out += kMaskToken;
      return;
    case ExprKind::kUnary: {
      out += e.text;
      // Nested prefix operators are parenthesized so "-(-a)" never prints
      // as the decrement token.
      const Expr& operand = e.children[0];
      EmitWrapped(operand, Precedence(operand) <= kUnaryPrecedence, out);
      return;
    }
    case ExprKind::kBinary: {
      const int prec = BinaryPrecedence(e.text);
      const Expr& lhs = e.children[0];
      const Expr& rhs = e.children[1];
      EmitWrapped(lhs, Precedence(lhs) < prec, out);
      out += ' ';
      out += e.text;
      out += ' ';
      // Left-associative: an equal-precedence right operand needs parens.
      EmitWrapped(rhs, Precedence(rhs) <= prec, out);
      return;
    }
    case ExprKind::kField: {
      const Expr& obj = e.children[0];
      EmitWrapped(obj, Precedence(obj) <= kUnaryPrecedence, out);
      out += '.';
      out += e.text;
      return;
    }
    case ExprKind::kCall:
      if (e.has_receiver) {
        const Expr& recv = e.children[0];
        EmitWrapped(recv, Precedence(recv) <= kUnaryPrecedence, out);
        out += '.';
      }
      out += e.text;
      EmitArgs(e, out);
      return;
    case ExprKind::kIndex: {
      const Expr& arr = e.children[0];
      EmitWrapped(arr, Precedence(arr) <= kUnaryPrecedence, out);
      out += '[';
      EmitExpr(e.children[1], out);
      out += ']';
      return;
    }
  }
}

class Printer {
 public:
  std::string Print(const SourceUnit& unit) {
    for (std::size_t c = 0; c < unit.classes.size(); ++c) {
      if (c > 0) out_ += '\n';
      PrintClass(unit.classes[c]);
    }
    return std::move(out_);
  }

 private:
  void Line(int depth, const std::string& text) {
    out_.append(static_cast<std::size_t>(depth) * 4, ' ');
    out_ += text;
    out_ += '\n';
  }

  void PrintClass(const ClassDecl& cls) {
    Line(0, "class " + cls.name + " {");
    for (const auto& f : cls.fields) {
      Line(1, f.type.ToString() + " " + f.name + ";");
    }
    for (const auto& m : cls.methods) {
      std::string sig = m.return_type.ToString() + " " + m.name + "(";
      for (std::size_t i = 0; i < m.params.size(); ++i) {
        if (i > 0) sig += ", ";
        sig += m.params[i].type.ToString() + " " + m.params[i].name;
      }
      sig += ") {";
      Line(1, sig);
      PrintBlock(m.body, 2);
      Line(1, "}");
    }
    Line(0, "}");
  }

  void PrintBlock(const std::vector<Stmt>& block, int depth) {
    for (const auto& s : block) PrintStmt(s, depth);
  }

  void PrintStmt(const Stmt& s, int depth) {
    switch (s.kind) {
      case StmtKind::kVarDecl: {
        std::string text = s.decl_type.ToString() + " " + s.name;
        if (!s.exprs.empty()) text += " = " + RenderExpr(s.exprs[0]);
        Line(depth, text + ";");
        return;
      }
      case StmtKind::kAssign:
        Line(depth, RenderExpr(s.exprs[0]) + " " + s.op + " " +
                        RenderExpr(s.exprs[1]) + ";");
        return;
      case StmtKind::kExprStmt:
        Line(depth, RenderExpr(s.exprs[0]) + ";");
        return;
      case StmtKind::kReturn:
        Line(depth, s.exprs.empty() ? std::string("return;")
                                    : "return " + RenderExpr(s.exprs[0]) + ";");
        return;
      case StmtKind::kWhile:
        Line(depth, "while (" + RenderExpr(s.exprs[0]) + ") {");
        PrintBlock(s.body, depth + 1);
        Line(depth, "}");
        return;
      case StmtKind::kDoWhile:
        Line(depth, "do {");
        PrintBlock(s.body, depth + 1);
        Line(depth, "} while (" + RenderExpr(s.exprs[0]) + ");");
        return;
      case StmtKind::kIf:
        PrintIf(s, depth, "if (");
        Line(depth, "}");
        return;
    }
  }

  // Prints an if chain; an else branch consisting of a single if prints as
  // "} else if (...) {", which parses back to the same one-element block.
  void PrintIf(const Stmt& s, int depth, const std::string& lead) {
    Line(depth, lead + RenderExpr(s.exprs[0]) + ") {");
    PrintBlock(s.body, depth + 1);
    if (!s.has_else) return;
    if (s.else_body.size() == 1 && s.else_body[0].kind == StmtKind::kIf) {
      PrintIf(s.else_body[0], depth, "} else if (");
      return;
    }
    Line(depth, "} else {");
    PrintBlock(s.else_body, depth + 1);
  }

  std::string out_;
};

}  // namespace

std::string QuoteString(const std::string& value) {
  std::string out = "\"";
  for (const char c : value) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string RenderExpr(const Expr& expr) {
  std::string out;
  EmitExpr(expr, out);
  return out;
}

std::string Render(const SourceUnit& unit) { return Printer().Print(unit); }

}  // namespace mutalm::lang
