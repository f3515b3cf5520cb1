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

#include <algorithm>
#include <string>
#include <vector>

#include "mutalm/errors.h"
#include "mutalm/lang/ast.h"
#include "mutalm/targets.h"
#include "mutalm/util.h"
#include "test_support.h"

namespace mutalm::targets {
namespace {

using testing::Canon;

constexpr char kWorked[] =
    "class A { int f(int a, int b) { int res; res = a + b; return res; } }";

std::vector<MutationTarget> OnLine(const std::vector<MutationTarget>& all, int line) {
  std::vector<MutationTarget> out;
  for (const auto& t : all) {
    if (t.line == line) out.push_back(t);
  }
  return out;
}

// Masked text of the statement holding `t`.
std::string MaskedStatement(const lang::SourceUnit& unit, const MutationTarget& t) {
  const MaskedSequence seq = MaskTarget(unit, t);
  return seq.TextWithin(lang::FindStmt(unit, t.statement_id)->span);
}

const MutationTarget& Find(const std::vector<MutationTarget>& all, NodeKind kind,
                           const std::string& lexeme) {
  for (const auto& t : all) {
    if (t.kind == kind && t.lexeme == lexeme) return t;
  }
  throw Error("no target " + lexeme);
}

TEST(Targets, WorkedAssignment) {
  const auto unit = Canon(kWorked);
  const auto all = CollectTargets(unit);
  const auto line = OnLine(all, 4);
  ASSERT_EQ(line.size(), 5u);
  const std::vector<NodeKind> kinds = {NodeKind::kIdentifier, NodeKind::kAssignmentOperator,
                                       NodeKind::kIdentifier, NodeKind::kBinaryOperator,
                                       NodeKind::kIdentifier};
  const std::vector<std::string> masked = {
      "<mask> = a + b ;", "res <mask>= a + b ;", "res = <mask> + b ;",
      "res = a <mask> b ;", "res = a + <mask> ;"};
  for (std::size_t i = 0; i < line.size(); ++i) {
    EXPECT_EQ(line[i].kind, kinds[i]) << i;
    EXPECT_EQ(MaskedStatement(unit, line[i]), masked[i]) << i;
  }
  EXPECT_EQ(line[1].lexeme, "");
  EXPECT_EQ(line[1].span.length, 0u);
}

TEST(Targets, DeclarationsOnly) {
  EXPECT_TRUE(CollectTargets(Canon("class A { int x; }")).empty());
  // A declaration without initializer contributes nothing.
  EXPECT_TRUE(CollectTargets(Canon("class A { void f() { int x; } }")).empty());
}

TEST(Targets, MethodCall) {
  const auto all = CollectTargets(Canon(
      "class L { int add(int n) { return n; } void f(L list, int node) { list.add(node); } }"));
  EXPECT_NO_THROW(Find(all, NodeKind::kMethodName, "add"));
  EXPECT_NO_THROW(Find(all, NodeKind::kIdentifier, "list"));
  EXPECT_NO_THROW(Find(all, NodeKind::kIdentifier, "node"));
}

TEST(Targets, SortedByLineThenSpan) {
  const auto unit = testing::LoadDemo("fraction.mj");
  const auto all = CollectTargets(unit);
  ASSERT_FALSE(all.empty());
  for (std::size_t i = 1; i < all.size(); ++i) {
    const auto& a = all[i - 1];
    const auto& b = all[i];
    const bool ordered =
        a.line < b.line ||
        (a.line == b.line && (a.span.offset < b.span.offset ||
                              (a.span.offset == b.span.offset && a.span.length <= b.span.length)));
    EXPECT_TRUE(ordered) << i;
  }
}

TEST(Masking, LiteralFieldArrayAndStatic) {
  const auto unit = Canon(
      "class Node { Node next; int v; }\n"
      "class A {\n"
      "  int f(int res, Node node, int[] arr, int index) {\n"
      "    res = res + 10;\n"
      "    node = node.next;\n"
      "    res = arr[index + 1];\n"
      "    res = Math.abs(res) * 10;\n"
      "    return res;\n"
      "  }\n"
      "}\n");
  const auto all = CollectTargets(unit);
  EXPECT_EQ(MaskedStatement(unit, Find(all, NodeKind::kLiteral, "10")), "res = res + <mask> ;");
  EXPECT_EQ(MaskedStatement(unit, Find(all, NodeKind::kObjectField, "next")),
            "node = node . <mask> ;");
  EXPECT_EQ(MaskedStatement(unit, Find(all, NodeKind::kArrayIndex, "index + 1")),
            "res = arr [ <mask> ] ;");
  EXPECT_EQ(MaskedStatement(unit, Find(all, NodeKind::kStaticTypeRef, "Math")),
            "res = <mask> . abs ( res ) * 10 ;");
}

TEST(Masking, OneSequencePerTarget) {
  const auto unit = testing::LoadDemo("fraction.mj");
  const auto all = CollectTargets(unit);
  std::size_t sequences = 0;
  for (const auto& t : all) {
    const auto seq = MaskTarget(unit, t);
    int masks = 0;
    for (const auto& tok : seq.tokens) masks += tok.kind == lang::TokenKind::kMask;
    EXPECT_EQ(masks, 1);
    EXPECT_EQ(seq.tokens[seq.mask_index].kind, lang::TokenKind::kMask);
    EXPECT_EQ(seq.original_lexeme, t.lexeme);
    ++sequences;
  }
  EXPECT_EQ(sequences, all.size());
}

TEST(Masking, StaleTarget) {
  const auto unit = Canon(kWorked);
  auto t = CollectTargets(unit).front();
  t.lexeme = "zzz";
  EXPECT_THROW(MaskTarget(unit, t), TargetStale);
}

TEST(Locality, TargetsIgnoreNeighbours) {
  auto kinds = [](const std::string& text) {
    const auto unit = Canon(text);
    std::vector<std::pair<NodeKind, std::string>> out;
    for (const auto& t : CollectTargets(unit)) {
      if (lang::FindStmt(unit, t.statement_id)->kind == lang::StmtKind::kAssign) {
        out.emplace_back(t.kind, t.lexeme);
      }
    }
    return out;
  };
  const auto alone = kinds("class A { void f(int a, int b) { a = a * b; } }");
  const auto crowded = kinds(
      "class A { int g(int q) { return q; } void f(int a, int b) { if (b > 2) { b = 1; } "
      "a = a * b; while (a < 3) { a += 1; } } }");
  const std::vector<std::pair<NodeKind, std::string>> expected(alone.begin(), alone.end());
  EXPECT_NE(std::search(crowded.begin(), crowded.end(), expected.begin(), expected.end()),
            crowded.end());
}

MaskedSequence Synthetic(std::size_t n, std::size_t mask) {
  MaskedSequence seq;
  for (std::size_t i = 0; i < n; ++i) {
    lang::Token t;
    t.lexeme = i == mask ? std::string(lang::kMaskToken) : "t" + std::to_string(i);
    t.kind = i == mask ? lang::TokenKind::kMask : lang::TokenKind::kIdentifier;
    t.span = lang::Span{i * 4, 2};
    seq.tokens.push_back(t);
  }
  seq.mask_index = mask;
  return seq;
}

TEST(Crop, CenteredWindow) {
  const auto out = CropWindow(Synthetic(600, 300), 512);
  ASSERT_EQ(out.tokens.size(), 512u);
  EXPECT_EQ(out.mask_index, 255u);
  EXPECT_EQ(out.tokens.front().lexeme, "t45");
  EXPECT_EQ(out.tokens.back().lexeme, "t556");
}

TEST(Crop, ShortSequenceUnchanged) {
  const auto in = Synthetic(10, 4);
  const auto out = CropWindow(in, 512);
  EXPECT_EQ(out.tokens.size(), 10u);
  EXPECT_EQ(out.mask_index, 4u);
}

TEST(Crop, ShiftsAtStart) {
  const auto out = CropWindow(Synthetic(600, 0), 512);
  ASSERT_EQ(out.tokens.size(), 512u);
  EXPECT_EQ(out.mask_index, 0u);
  EXPECT_EQ(out.tokens.back().lexeme, "t511");
}

TEST(Crop, InvalidLimit) {
  EXPECT_THROW(CropWindow(Synthetic(5, 1), 0), InvalidLimit);
}

TEST(Crop, NeverDropsMask) {
  Rng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + rng.Below(700);
    const std::size_t mask = rng.Below(n);
    const std::size_t limit = 1 + rng.Below(600);
    const auto out = CropWindow(Synthetic(n, mask), limit);
    ASSERT_LE(out.tokens.size(), limit);
    ASSERT_EQ(out.tokens.size(), std::min(n, limit));
    ASSERT_EQ(out.tokens[out.mask_index].kind, lang::TokenKind::kMask);
  }
}

}  // namespace
}  // namespace mutalm::targets
