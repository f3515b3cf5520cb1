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

#ifndef MUTALM_TARGETS_H_
#define MUTALM_TARGETS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mutalm/lang/ast.h"
#include "mutalm/lang/token.h"

namespace mutalm::targets {

inline constexpr std::size_t kDefaultWindow = 512;

// The nine maskable node categories.
enum class NodeKind {
  kLiteral,
  kIdentifier,
  kBinaryOperator,
  kUnaryOperator,
  kAssignmentOperator,
  kObjectField,
  kMethodName,
  kArrayIndex,
  kStaticTypeRef,
};

inline constexpr NodeKind kAllNodeKinds[] = {
    NodeKind::kLiteral,        NodeKind::kIdentifier,
    NodeKind::kBinaryOperator, NodeKind::kUnaryOperator,
    NodeKind::kAssignmentOperator, NodeKind::kObjectField,
    NodeKind::kMethodName,     NodeKind::kArrayIndex,
    NodeKind::kStaticTypeRef};

const char* NodeKindName(NodeKind kind);
std::optional<NodeKind> ParseNodeKind(const std::string& name);

struct MutationTarget {
  NodeKind kind = NodeKind::kIdentifier;
  // Source range that gets masked. For assignment operators this is the
  // operator minus its trailing '=' (empty for plain '='), so the masked
  // text reads "x <mask>= y".
  lang::Span span;
  int line = 0;
  int statement_id = -1;
  // Source text under `span`.
  std::string lexeme;

  friend bool operator==(const MutationTarget&, const MutationTarget&) = default;
};

// All targets inside method bodies, ordered by (line, offset, length).
// Declarations contribute only their initializer expression.
std::vector<MutationTarget> CollectTargets(const lang::SourceUnit& unit);

// Targets inside one expression of statement `stmt` (used to find mask sites
// in seeded conditions).
std::vector<MutationTarget> CollectExprTargets(const lang::SourceUnit& unit,
                                               const lang::Expr& expr,
                                               const lang::Stmt& stmt);

struct MaskedSequence {
  lang::TokenStream tokens;
  std::size_t mask_index = 0;
  MutationTarget origin;
  // Index of the seeded condition this sequence came from; -1 when first
  // order.
  int seeded_index = -1;
  std::string original_lexeme;

  // Lexemes joined by single spaces; an assignment-operator mask is glued
  // to its '=' so it reads "<mask>=".
  std::string Text() const;
  // Text() restricted to tokens whose offset lies inside `range`.
  std::string TextWithin(const lang::Span& range) const;
};

// Replaces the target's tokens in unit.source with one mask token.
// Throws TargetStale when the span no longer lines up with the source.
MaskedSequence MaskTarget(const lang::SourceUnit& unit,
                          const MutationTarget& target);

// Keeps at most max_tokens tokens around the mask: floor((max-1)/2) before
// it and the rest after, shifted at either end so the window stays full.
// Throws InvalidLimit when max_tokens < 1.
MaskedSequence CropWindow(const MaskedSequence& seq, std::size_t max_tokens);

}  // namespace mutalm::targets

#endif  // MUTALM_TARGETS_H_
