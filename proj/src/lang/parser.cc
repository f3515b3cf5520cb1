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

#include "mutalm/lang/parser.h"

#include <charconv>
#include <utility>

#include "mutalm/errors.h"
#include "mutalm/lang/printer.h"

namespace mutalm {

namespace {

std::string DescribeParseError(int line, const std::string& found,
                               const std::vector<std::string>& expected) {
  std::string msg = "line " + std::to_string(line) + ": expected ";
  for (std::size_t i = 0; i < expected.size(); ++i) {
    if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
    msg += expected[i];
  }
  msg += ", found " + found;
  return msg;
}

}  // namespace

ParseError::ParseError(std::size_t offset, int line, const std::string& found,
                       std::vector<std::string> expected)
    : Error(DescribeParseError(line, found, expected)),
      offset_(offset),
      line_(line),
      found_(found),
      expected_(std::move(expected)) {}

namespace lang {
namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text), tokens_(Tokenize(text)) {
    eof_.lexeme = "";
    eof_.span = Span{text.size(), 0};
    eof_.line = tokens_.empty() ? 1 : tokens_.back().line;
  }

  SourceUnit ParseUnit() {
    SourceUnit unit;
    unit.source = std::string(text_);
    if (AtEnd()) Fail({"'class'"});
    while (!AtEnd()) unit.classes.push_back(ParseClass());
    return unit;
  }

  Expr ParseStandaloneExpression() {
    Expr e = ParseExpr();
    if (!AtEnd()) Fail({"end of input"});
    return e;
  }

 private:
  const Token& Peek(std::size_t ahead = 0) const {
    return pos_ + ahead < tokens_.size() ? tokens_[pos_ + ahead] : eof_;
  }
  bool AtEnd() const { return pos_ >= tokens_.size(); }
  bool At(std::string_view lexeme, std::size_t ahead = 0) const {
    const Token& t = Peek(ahead);
    return pos_ + ahead < tokens_.size() && t.lexeme == lexeme &&
           t.kind != TokenKind::kLiteral;
  }
  const Token& Advance() { return tokens_[pos_++]; }
  const Token& Previous() const { return tokens_[pos_ - 1]; }

  [[noreturn]] void Fail(std::vector<std::string> expected) const {
    const Token& t = Peek();
    const std::string found =
        AtEnd() ? std::string("end of input") : "'" + t.lexeme + "'";
    throw ParseError(t.span.offset, t.line, found, std::move(expected));
  }

  const Token& Expect(std::string_view lexeme) {
    if (!At(lexeme)) Fail({"'" + std::string(lexeme) + "'"});
    return Advance();
  }

  const Token& ExpectIdentifier() {
    if (AtEnd() || Peek().kind != TokenKind::kIdentifier) Fail({"identifier"});
    return Advance();
  }

  // Span from token `start` through the last consumed token.
  Span SpanFrom(std::size_t start_offset) const {
    return Span{start_offset, Previous().span.end() - start_offset};
  }

  bool AtTypeStart() const {
    const Token& t = Peek();
    if (t.kind == TokenKind::kKeyword &&
        (t.lexeme == "int" || t.lexeme == "boolean" || t.lexeme == "String" ||
         t.lexeme == "void")) {
      return true;
    }
    return t.kind == TokenKind::kIdentifier;
  }

  TypeRef ParseType() {
    TypeRef type;
    if (!AtTypeStart()) Fail({"type"});
    type.base = Advance().lexeme;
    while (At("[")) {
      Advance();
      Expect("]");
      ++type.dims;
    }
    return type;
  }

  ClassDecl ParseClass() {
    ClassDecl cls;
    const Token& kw = Expect("class");
    cls.line = kw.line;
    const std::size_t start = kw.span.offset;
    cls.name = ExpectIdentifier().lexeme;
    Expect("{");
    while (!At("}")) {
      if (AtEnd()) Fail({"'}'"});
      const Token& first = Peek();
      TypeRef type = ParseType();
      const std::string name = ExpectIdentifier().lexeme;
      if (At(";")) {
        Advance();
        cls.fields.push_back(Field{type, name, SpanFrom(first.span.offset), first.line});
        continue;
      }
      if (!At("(")) Fail({"';'", "'('"});
      Method method;
      method.return_type = type;
      method.name = name;
      method.line = first.line;
      Advance();
      if (!At(")")) {
        for (;;) {
          const std::size_t pstart = Peek().span.offset;
          Param p;
          p.type = ParseType();
          p.name = ExpectIdentifier().lexeme;
          p.span = SpanFrom(pstart);
          method.params.push_back(std::move(p));
          if (At(",")) {
            Advance();
            continue;
          }
          break;
        }
      }
      Expect(")");
      method.body = ParseBlock();
      method.span = SpanFrom(first.span.offset);
      cls.methods.push_back(std::move(method));
    }
    Expect("}");
    cls.span = SpanFrom(start);
    return cls;
  }

  std::vector<Stmt> ParseBlock() {
    Expect("{");
    std::vector<Stmt> block;
    while (!At("}")) {
      if (AtEnd()) Fail({"'}'"});
      block.push_back(ParseStmt());
    }
    Expect("}");
    return block;
  }

  // Branch and loop bodies: a braced block, or one statement which is
  // stored as a one-element block.
  std::vector<Stmt> ParseBody() {
    if (At("{")) return ParseBlock();
    std::vector<Stmt> block;
    block.push_back(ParseStmt());
    return block;
  }

  bool AtDeclaration() const {
    const Token& t = Peek();
    if (t.kind == TokenKind::kKeyword &&
        (t.lexeme == "int" || t.lexeme == "boolean" || t.lexeme == "String")) {
      return true;
    }
    if (t.kind != TokenKind::kIdentifier) return false;
    if (Peek(1).kind == TokenKind::kIdentifier && pos_ + 1 < tokens_.size()) {
      return true;
    }
    return At("[", 1) && At("]", 2);
  }

  Stmt ParseStmt() {
    Stmt s;
    s.id = next_id_++;
    const Token& first = Peek();
    s.line = first.line;
    const std::size_t start = first.span.offset;
    if (At("if")) {
      Advance();
      s.kind = StmtKind::kIf;
      Expect("(");
      s.exprs.push_back(ParseExpr());
      Expect(")");
      s.body = ParseBody();
      if (At("else")) {
        Advance();
        s.has_else = true;
        s.else_body = ParseBody();
      }
    } else if (At("while")) {
      Advance();
      s.kind = StmtKind::kWhile;
      Expect("(");
      s.exprs.push_back(ParseExpr());
      Expect(")");
      s.body = ParseBody();
    } else if (At("do")) {
      Advance();
      s.kind = StmtKind::kDoWhile;
      s.body = ParseBody();
      Expect("while");
      Expect("(");
      s.exprs.push_back(ParseExpr());
      Expect(")");
      Expect(";");
    } else if (At("return")) {
      Advance();
      s.kind = StmtKind::kReturn;
      if (!At(";")) s.exprs.push_back(ParseExpr());
      Expect(";");
    } else if (AtDeclaration()) {
      s.kind = StmtKind::kVarDecl;
      s.decl_type = ParseType();
      s.name = ExpectIdentifier().lexeme;
      if (At("=")) {
        Advance();
        s.exprs.push_back(ParseExpr());
      }
      Expect(";");
    } else {
      Expr e = ParseExpr();
      const Token& t = Peek();
      if (t.kind == TokenKind::kOperator &&
          (t.lexeme == "=" || t.lexeme == "+=" || t.lexeme == "-=" ||
           t.lexeme == "*=" || t.lexeme == "/=")) {
        s.kind = StmtKind::kAssign;
        s.op = t.lexeme;
        s.op_span = t.span;
        Advance();
        s.exprs.push_back(std::move(e));
        s.exprs.push_back(ParseExpr());
      } else {
        s.kind = StmtKind::kExprStmt;
        s.exprs.push_back(std::move(e));
      }
      Expect(";");
    }
    s.span = SpanFrom(start);
    return s;
  }

  bool AtExpressionStart() const {
    if (AtEnd()) return false;
    const Token& t = Peek();
    switch (t.kind) {
      case TokenKind::kIdentifier:
      case TokenKind::kLiteral:
      case TokenKind::kMask:
        return true;
      case TokenKind::kOperator:
        return t.lexeme == "!" || t.lexeme == "-" || t.lexeme == "++" ||
               t.lexeme == "--";
      case TokenKind::kSeparator:
        return t.lexeme == "(";
      default:
        return false;
    }
  }

  Expr ParseExpr() { return ParseBinary(1); }

  Expr ParseBinary(int min_prec) {
    Expr lhs = ParseUnary();
    for (;;) {
      const Token& t = Peek();
      if (AtEnd() || t.kind != TokenKind::kOperator) break;
      const int prec = BinaryPrecedence(t.lexeme);
      if (prec == 0 || prec < min_prec) break;
      const Token& op = Advance();
      if (!AtExpressionStart()) {
        throw ParseError(op.span.offset, op.line, "'" + op.lexeme + "'",
                         {"operand after '" + op.lexeme + "'"});
      }
      Expr rhs = ParseBinary(prec + 1);
      Expr bin;
      bin.kind = ExprKind::kBinary;
      bin.text = op.lexeme;
      bin.token_span = op.span;
      bin.line = lhs.line;
      bin.span = Span{lhs.span.offset, rhs.span.end() - lhs.span.offset};
      bin.children.push_back(std::move(lhs));
      bin.children.push_back(std::move(rhs));
      lhs = std::move(bin);
    }
    return lhs;
  }

  Expr ParseUnary() {
    const Token& t = Peek();
    if (!AtEnd() && t.kind == TokenKind::kOperator &&
        (t.lexeme == "!" || t.lexeme == "-" || t.lexeme == "++" ||
         t.lexeme == "--")) {
      const Token& op = Advance();
      if (!AtExpressionStart()) Fail({"operand after '" + op.lexeme + "'"});
      Expr operand = ParseUnary();
      Expr u;
      u.kind = ExprKind::kUnary;
      u.text = op.lexeme;
      u.token_span = op.span;
      u.line = op.line;
      u.span = Span{op.span.offset, operand.span.end() - op.span.offset};
      u.children.push_back(std::move(operand));
      return u;
    }
    return ParsePostfix();
  }

  std::vector<Expr> ParseArgs() {
    std::vector<Expr> args;
    Expect("(");
    if (!At(")")) {
      for (;;) {
        args.push_back(ParseExpr());
        if (At(",")) {
          Advance();
          continue;
        }
        break;
      }
    }
    Expect(")");
    return args;
  }

  Expr ParsePostfix() {
    Expr e = ParsePrimary();
    for (;;) {
      if (At(".")) {
        Advance();
        const Token& name = ExpectIdentifier();
        Expr next;
        next.text = name.lexeme;
        next.token_span = name.span;
        next.line = e.line;
        if (At("(")) {
          next.kind = ExprKind::kCall;
          next.has_receiver = true;
          next.children.push_back(std::move(e));
          for (auto& a : ParseArgs()) next.children.push_back(std::move(a));
        } else {
          next.kind = ExprKind::kField;
          next.children.push_back(std::move(e));
        }
        next.span = SpanFrom(next.children[0].span.offset);
        e = std::move(next);
      } else if (At("[")) {
        Advance();
        Expr idx;
        idx.kind = ExprKind::kIndex;
        idx.line = e.line;
        idx.children.push_back(std::move(e));
        idx.children.push_back(ParseExpr());
        Expect("]");
        idx.token_span = idx.children[1].span;
        idx.span = SpanFrom(idx.children[0].span.offset);
        e = std::move(idx);
      } else {
        return e;
      }
    }
  }

  Expr ParsePrimary() {
    if (AtEnd()) Fail({"expression"});
    const Token& t = Peek();
    Expr e;
    e.line = t.line;
    e.token_span = t.span;
    e.span = t.span;
    switch (t.kind) {
      case TokenKind::kMask:
        Advance();
        e.kind = ExprKind::kMask;
        return e;
      case TokenKind::kLiteral:
        Advance();
        if (t.lexeme == "true" || t.lexeme == "false") {
          e.kind = ExprKind::kBoolLit;
          e.bool_value = t.lexeme == "true";
        } else if (t.lexeme == "null") {
          e.kind = ExprKind::kNullLit;
        } else if (t.lexeme[0] == '"') {
          e.kind = ExprKind::kStringLit;
          e.text = DecodeString(t.lexeme);
        } else {
          e.kind = ExprKind::kIntLit;
          const auto* begin = t.lexeme.data();
          const auto* end = begin + t.lexeme.size();
          auto [ptr, ec] = std::from_chars(begin, end, e.int_value);
          if (ec != std::errc() || ptr != end) {
            throw ParseError(t.span.offset, t.line, "'" + t.lexeme + "'",
                             {"integer literal within 64-bit range"});
          }
        }
        return e;
      case TokenKind::kIdentifier:
        Advance();
        e.text = t.lexeme;
        if (At("(")) {
          e.kind = ExprKind::kCall;
          e.children = ParseArgs();
          e.span = SpanFrom(t.span.offset);
        } else {
          e.kind = ExprKind::kName;
        }
        return e;
      default:
        break;
    }
    if (At("(")) {
      Advance();
      Expr inner = ParseExpr();
      Expect(")");
      return inner;
    }
    Fail({"expression"});
  }

  static std::string DecodeString(const std::string& lexeme) {
    std::string out;
    for (std::size_t i = 1; i + 1 < lexeme.size(); ++i) {
      char c = lexeme[i];
      if (c == '\\') {
        const char e = lexeme[++i];
        c = e == 'n' ? '\n' : e == 't' ? '\t' : e;
      }
      out += c;
    }
    return out;
  }

  std::string_view text_;
  TokenStream tokens_;
  Token eof_;
  std::size_t pos_ = 0;
  int next_id_ = 0;
};

}  // namespace

int BinaryPrecedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "==" || op == "!=") return 3;
  if (op == "<" || op == "<=" || op == ">" || op == ">=") return 4;
  if (op == "+" || op == "-") return 5;
  if (op == "*" || op == "/" || op == "%") return 6;
  return 0;
}

SourceUnit Parse(std::string_view text) { return Parser(text).ParseUnit(); }

Expr ParseExpression(std::string_view text) {
  return Parser(text).ParseStandaloneExpression();
}

SourceUnit Canonicalize(const SourceUnit& unit) { return Parse(Render(unit)); }

}  // namespace lang
}  // namespace mutalm
