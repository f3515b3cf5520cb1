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

#include <gtest/gtest.h>

#include <string>
#include <vector>

#include "mutalm/errors.h"
#include "mutalm/lang/ast.h"
#include "mutalm/lang/parser.h"
#include "mutalm/lang/printer.h"
#include "mutalm/lang/token.h"
#include "mutalm/lang/validator.h"
#include "mutalm/util.h"
#include "test_support.h"

namespace mutalm::lang {
namespace {

constexpr char kClassA[] =
    "class A { int f(int a, int b) { int res; res = a + b; return res; } }";

std::vector<TokenKind> Kinds(const TokenStream& tokens) {
  std::vector<TokenKind> kinds;
  for (const auto& t : tokens) kinds.push_back(t.kind);
  return kinds;
}

TEST(Lexer, WorkedExpression) {
  const auto tokens = Tokenize("res = a + b");
  EXPECT_EQ(Kinds(tokens),
            (std::vector<TokenKind>{TokenKind::kIdentifier, TokenKind::kOperator,
                                    TokenKind::kIdentifier, TokenKind::kOperator,
                                    TokenKind::kIdentifier}));
}

TEST(Lexer, MaskIsOneToken) {
  const auto tokens = Tokenize("res = <mask> + b");
  ASSERT_EQ(tokens.size(), 5u);
  EXPECT_EQ(tokens[2].kind, TokenKind::kMask);
  EXPECT_EQ(tokens[2].lexeme, kMaskToken);
}

TEST(Lexer, Declaration) {
  EXPECT_EQ(Tokenize("int a = 1;").size(), 5u);
}

TEST(Lexer, CommentsAndLines) {
  const auto tokens = Tokenize("// c\na /* x\ny */ >= b");
  ASSERT_EQ(tokens.size(), 3u);
  EXPECT_EQ(tokens[0].line, 2);
  EXPECT_EQ(tokens[1].lexeme, ">=");
  EXPECT_EQ(tokens[1].line, 3);
}

TEST(Lexer, IllegalCharacter) {
  EXPECT_THROW(Tokenize("a # b"), LexError);
  EXPECT_THROW(Tokenize("\"open"), LexError);
}

TEST(Parser, WorkedClass) {
  const SourceUnit unit = Parse(kClassA);
  ASSERT_EQ(unit.classes.size(), 1u);
  ASSERT_EQ(unit.classes[0].methods.size(), 1u);
  EXPECT_EQ(unit.classes[0].methods[0].body.size(), 3u);
}

TEST(Parser, EmptyInput) { EXPECT_THROW(Parse(""), ParseError); }

TEST(Parser, DanglingOperator) {
  const std::string text = "class A { int f() { return 1 + ; } }";
  try {
    Parse(text);
    FAIL() << "parsed";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), text.find('+'));
  }
}

TEST(Parser, StatementIdsArePreOrder) {
  const SourceUnit unit =
      Parse("class A { void f(int x) { if (x > 0) { x = 1; } else { x = 2; } x = 3; } }");
  std::vector<int> ids;
  ForEachStmt(unit.classes[0].methods[0].body, [&](const Stmt& s) { ids.push_back(s.id); });
  EXPECT_EQ(ids, (std::vector<int>{0, 1, 2, 3}));
}

TEST(Printer, BinaryExpression) {
  const SourceUnit unit = Parse(kClassA);
  EXPECT_NE(Render(unit).find("res = a + b;"), std::string::npos);
}

TEST(Printer, RoundTripWorkedClass) {
  const SourceUnit unit = Parse(kClassA);
  EXPECT_TRUE(StructurallyEqual(unit, Parse(Render(unit))));
}

TEST(Printer, ParenthesesOnlyWhereNeeded) {
  EXPECT_EQ(RenderExpr(ParseExpression("(a + b) * c")), "(a + b) * c");
  EXPECT_EQ(RenderExpr(ParseExpression("a + (b * c)")), "a + b * c");
  EXPECT_EQ(RenderExpr(ParseExpression("a - (b - c)")), "a - (b - c)");
  EXPECT_EQ(RenderExpr(ParseExpression("-(-a)")), "-(-a)");
}

TEST(Printer, DemoCorpusRoundTrips) {
  for (const char* name : {"fraction.mj", "fraction_buggy.mj"}) {
    const SourceUnit unit = Parse(ReadFile(testing::DemoPath(name)));
    const std::string text = Render(unit);
    EXPECT_TRUE(StructurallyEqual(unit, Parse(text))) << name;
    EXPECT_EQ(Render(Parse(text)), text) << name;
  }
}

TEST(Validator, UndeclaredName) {
  const auto report = Validate(Parse("class A { int f(int a) { return c; } }"));
  ASSERT_FALSE(report.ok);
  EXPECT_EQ(report.diagnostics[0].category, DiagnosticCategory::kNameResolution);
}

TEST(Validator, TypeMismatch) {
  const auto report = Validate(Parse("class A { boolean g() { return 1 + true; } }"));
  ASSERT_FALSE(report.ok);
  EXPECT_EQ(report.diagnostics[0].category, DiagnosticCategory::kType);
}

TEST(Validator, MaskRejected) {
  EXPECT_FALSE(Validate(Parse("class A { int f(int a) { return a + <mask>; } }")).ok);
}

TEST(Validator, MissingReturn) {
  EXPECT_FALSE(Validate(Parse("class A { int f(int a) { if (a > 0) { return 1; } } }")).ok);
  EXPECT_TRUE(Validate(Parse(
      "class A { int f(int a) { if (a > 0) { return 1; } else { return 2; } } }")).ok);
}

TEST(Validator, DemoFixturesValidate) {
  for (const char* name : {"fraction.mj", "fraction_buggy.mj"}) {
    const auto report = Validate(Parse(ReadFile(testing::DemoPath(name))));
    EXPECT_TRUE(report.ok) << name;
  }
}

TEST(Validator, Deterministic) {
  const SourceUnit unit =
      Parse("class A { int f(int a) { x = y; return z + true; } boolean g() { return q; } }");
  const auto a = Validate(unit);
  const auto b = Validate(unit);
  ASSERT_EQ(a.diagnostics.size(), b.diagnostics.size());
  ASSERT_GE(a.diagnostics.size(), 3u);
  for (std::size_t i = 0; i < a.diagnostics.size(); ++i) {
    EXPECT_EQ(a.diagnostics[i].message, b.diagnostics[i].message);
    EXPECT_EQ(a.diagnostics[i].span, b.diagnostics[i].span);
    if (i > 0) {
      EXPECT_LE(a.diagnostics[i - 1].span.offset, a.diagnostics[i].span.offset);
    }
  }
}

TEST(Validator, VisibleVariables) {
  const SourceUnit unit = Parse(
      "class A { int f; int m(int p) { int x = 1; if (p > 0) { int y = 2; x = y; } return x; } }");
  // Statement ids: 0 decl x, 1 if, 2 decl y, 3 assign, 4 return.
  std::vector<std::string> names;
  for (const auto& v : VisibleVariables(unit, 3)) names.push_back(v.name);
  EXPECT_EQ(names, (std::vector<std::string>{"f", "p", "x", "y"}));
  names.clear();
  for (const auto& v : VisibleVariables(unit, 4)) names.push_back(v.name);
  EXPECT_EQ(names, (std::vector<std::string>{"f", "p", "x"}));
  EXPECT_TRUE(VisibleVariables(unit, 99).empty());
}

// Random syntax trees; type correctness is not needed for the round trip.
class AstGen {
 public:
  explicit AstGen(std::uint64_t seed) : rng_(seed) {}

  SourceUnit Unit() {
    SourceUnit unit;
    const int classes = 1 + Pick(2);
    for (int c = 0; c < classes; ++c) {
      ClassDecl cls;
      cls.name = "C" + std::to_string(c);
      for (int f = Pick(3); f > 0; --f) cls.fields.push_back(Field{Type(), Name(), {}, 0});
      for (int m = 1 + Pick(2); m > 0; --m) {
        Method method;
        method.return_type = Pick(4) == 0 ? TypeRef{"void", 0} : Type();
        method.name = "m" + std::to_string(m);
        for (int p = Pick(3); p > 0; --p) method.params.push_back(Param{Type(), Name(), {}});
        method.body = Block(0);
        cls.methods.push_back(std::move(method));
      }
      unit.classes.push_back(std::move(cls));
    }
    return unit;
  }

 private:
  int Pick(int n) { return static_cast<int>(rng_.Below(static_cast<std::uint64_t>(n))); }

  std::string Name() {
    static const char* kNames[] = {"a", "b", "res", "node", "list", "sum", "x1", "Math"};
    return kNames[Pick(8)];
  }

  TypeRef Type() {
    static const char* kBases[] = {"int", "boolean", "String", "Node"};
    return TypeRef{kBases[Pick(4)], Pick(4) == 0 ? 1 : 0};
  }

  Expr Leaf() {
    Expr e;
    switch (Pick(5)) {
      case 0:
        e.kind = ExprKind::kIntLit;
        e.int_value = static_cast<std::int64_t>(rng_.Below(1000));
        break;
      case 1:
        e.kind = ExprKind::kBoolLit;
        e.bool_value = Pick(2) == 0;
        break;
      case 2:
        e.kind = ExprKind::kStringLit;
        e.text = Pick(2) == 0 ? "hi \"there\"\n" : "";
        break;
      case 3:
        e.kind = ExprKind::kNullLit;
        break;
      default:
        e.kind = ExprKind::kName;
        e.text = Name();
    }
    return e;
  }

  Expr Exp(int depth) {
    if (depth > 3 || Pick(3) == 0) return Leaf();
    static const char* kBinary[] = {"||", "&&", "==", "!=", "<", "<=", ">",
                                    ">=", "+",  "-",  "*",  "/", "%"};
    static const char* kUnary[] = {"!", "-", "++", "--"};
    Expr e;
    switch (Pick(6)) {
      case 0:
        e.kind = ExprKind::kUnary;
        e.text = kUnary[Pick(4)];
        e.children.push_back(Exp(depth + 1));
        break;
      case 1:
        e.kind = ExprKind::kField;
        e.text = Name();
        e.children.push_back(Exp(depth + 1));
        break;
      case 2:
        e.kind = ExprKind::kCall;
        e.text = "call";
        e.has_receiver = Pick(2) == 0;
        for (int n = (e.has_receiver ? 1 : 0) + Pick(3); n > 0; --n) {
          e.children.push_back(Exp(depth + 1));
        }
        break;
      case 3:
        e.kind = ExprKind::kIndex;
        e.children.push_back(Exp(depth + 1));
        e.children.push_back(Exp(depth + 1));
        break;
      default:
        e.kind = ExprKind::kBinary;
        e.text = kBinary[Pick(13)];
        e.children.push_back(Exp(depth + 1));
        e.children.push_back(Exp(depth + 1));
    }
    return e;
  }

  std::vector<Stmt> Block(int depth) {
    std::vector<Stmt> block;
    for (int n = Pick(4); n > 0; --n) block.push_back(Statement(depth));
    return block;
  }

  Stmt Statement(int depth) {
    static const char* kAssignOps[] = {"=", "+=", "-=", "*=", "/="};
    Stmt s;
    const int choice = depth > 2 ? Pick(4) : Pick(7);
    switch (choice) {
      case 0:
        s.kind = StmtKind::kVarDecl;
        s.decl_type = Type();
        s.name = Name();
        if (Pick(2) == 0) s.exprs.push_back(Exp(0));
        break;
      case 1: {
        s.kind = StmtKind::kAssign;
        s.op = kAssignOps[Pick(5)];
        Expr target;
        target.kind = ExprKind::kName;
        target.text = Name();
        s.exprs.push_back(std::move(target));
        s.exprs.push_back(Exp(0));
        break;
      }
      case 2:
        s.kind = StmtKind::kReturn;
        if (Pick(2) == 0) s.exprs.push_back(Exp(0));
        break;
      case 3:
        s.kind = StmtKind::kExprStmt;
        s.exprs.push_back(Exp(0));
        break;
      case 4:
        s.kind = StmtKind::kIf;
        s.exprs.push_back(Exp(0));
        s.body = Block(depth + 1);
        s.has_else = Pick(2) == 0;
        if (s.has_else) s.else_body = Block(depth + 1);
        break;
      case 5:
        s.kind = StmtKind::kWhile;
        s.exprs.push_back(Exp(0));
        s.body = Block(depth + 1);
        break;
      default:
        s.kind = StmtKind::kDoWhile;
        s.exprs.push_back(Exp(0));
        s.body = Block(depth + 1);
    }
    return s;
  }

  Rng rng_;
};

TEST(RoundTrip, GeneratedTrees) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const SourceUnit unit = AstGen(seed).Unit();
    const std::string text = Render(unit);
    SourceUnit back;
    ASSERT_NO_THROW(back = Parse(text)) << "seed " << seed << "\n" << text;
    EXPECT_TRUE(StructurallyEqual(unit, back)) << "seed " << seed << "\n" << text;
    EXPECT_EQ(Render(back), text) << "seed " << seed;
  }
}

TEST(RoundTrip, CanonicalTokenSpans) {
  for (std::uint64_t seed = 100; seed < 150; ++seed) {
    const auto tokens = Tokenize(Render(AstGen(seed).Unit()));
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      EXPECT_GT(tokens[i].span.length, 0u);
      if (i > 0) {
        EXPECT_GE(tokens[i].span.offset, tokens[i - 1].span.end());
      }
    }
  }
}

}  // namespace
}  // namespace mutalm::lang
