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

#include "mutalm/targets.h"

#include <algorithm>
#include <tuple>

#include "mutalm/errors.h"
#include "mutalm/lang/validator.h"

namespace mutalm::targets {

using lang::Expr;
using lang::ExprKind;
using lang::Span;
using lang::Stmt;
using lang::StmtKind;

const char* NodeKindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kLiteral: return "literal";
    case NodeKind::kIdentifier: return "identifier";
    case NodeKind::kBinaryOperator: return "binary-operator";
    case NodeKind::kUnaryOperator: return "unary-operator";
    case NodeKind::kAssignmentOperator: return "assignment-operator";
    case NodeKind::kObjectField: return "object-field";
    case NodeKind::kMethodName: return "method-name";
    case NodeKind::kArrayIndex: return "array-index";
    case NodeKind::kStaticTypeRef: return "static-type-ref";
  }
  return "?";
}

std::optional<NodeKind> ParseNodeKind(const std::string& name) {
  for (NodeKind k : kAllNodeKinds) {
    if (name == NodeKindName(k)) return k;
  }
  return std::nullopt;
}

namespace {

class Collector {
 public:
  Collector(const std::string& source, std::vector<MutationTarget>& out)
      : source_(source), out_(out) {}

  void Enter(const Stmt& s) { stmt_ = &s; }

  void Statement(const Stmt& s) {
    stmt_ = &s;
    switch (s.kind) {
      case StmtKind::kVarDecl:
        if (!s.exprs.empty()) Walk(s.exprs[0]);
        return;
      case StmtKind::kAssign: {
        Walk(s.exprs[0]);
        const Span prefix{s.op_span.offset, s.op_span.length - 1};
        Add(NodeKind::kAssignmentOperator, prefix, s.line);
        Walk(s.exprs[1]);
        return;
      }
      default:
        for (const auto& e : s.exprs) Walk(e);
    }
  }

  void Walk(const Expr& e) {
    switch (e.kind) {
      case ExprKind::kIntLit:
      case ExprKind::kBoolLit:
      case ExprKind::kStringLit:
      case ExprKind::kNullLit:
        Add(NodeKind::kLiteral, e.token_span, e.line);
        return;
      case ExprKind::kName:
        Add(NodeKind::kIdentifier, e.token_span, e.line);
        return;
      case ExprKind::kMask:
        return;
      case ExprKind::kUnary:
        Add(NodeKind::kUnaryOperator, e.token_span, e.line);
        Walk(e.children[0]);
        return;
      case ExprKind::kBinary:
        Walk(e.children[0]);
        Add(NodeKind::kBinaryOperator, e.token_span, e.line);
        Walk(e.children[1]);
        return;
      case ExprKind::kField:
        Receiver(e.children[0]);
        Add(NodeKind::kObjectField, e.token_span, e.line);
        return;
      case ExprKind::kCall:
        if (e.has_receiver) Receiver(e.children[0]);
        Add(NodeKind::kMethodName, e.token_span, e.line);
        for (std::size_t i = e.FirstArg(); i < e.children.size(); ++i) {
          Walk(e.children[i]);
        }
        return;
      case ExprKind::kIndex:
        Walk(e.children[0]);
        Add(NodeKind::kArrayIndex, e.token_span, e.line);
        Walk(e.children[1]);
        return;
    }
  }

 private:
  void Receiver(const Expr& recv) {
    if (recv.kind == ExprKind::kName && lang::IsBuiltinClass(recv.text)) {
      Add(NodeKind::kStaticTypeRef, recv.token_span, recv.line);
      return;
    }
    Walk(recv);
  }

  void Add(NodeKind kind, const Span& span, int line) {
    MutationTarget t;
    t.kind = kind;
    t.span = span;
    t.line = line;
    t.statement_id = stmt_->id;
    t.lexeme = source_.substr(span.offset, span.length);
    out_.push_back(std::move(t));
  }

  const std::string& source_;
  std::vector<MutationTarget>& out_;
  const Stmt* stmt_ = nullptr;
};

void SortTargets(std::vector<MutationTarget>& targets) {
  std::stable_sort(targets.begin(), targets.end(),
                   [](const MutationTarget& a, const MutationTarget& b) {
                     return std::tie(a.line, a.span.offset, a.span.length) <
                            std::tie(b.line, b.span.offset, b.span.length);
                   });
}

bool IsAssignmentPrefixMask(const MaskedSequence& seq, std::size_t i) {
  return i == seq.mask_index &&
         seq.origin.kind == NodeKind::kAssignmentOperator &&
         i + 1 < seq.tokens.size() && seq.tokens[i + 1].lexeme == "=";
}

}  // namespace

std::vector<MutationTarget> CollectTargets(const lang::SourceUnit& unit) {
  std::vector<MutationTarget> out;
  Collector collector(unit.source, out);
  for (const auto& cls : unit.classes) {
    for (const auto& m : cls.methods) {
      lang::ForEachStmt(m.body, [&](const Stmt& s) { collector.Statement(s); });
    }
  }
  SortTargets(out);
  return out;
}

std::vector<MutationTarget> CollectExprTargets(const lang::SourceUnit& unit,
                                               const Expr& expr, const Stmt& stmt) {
  std::vector<MutationTarget> out;
  Collector collector(unit.source, out);
  collector.Enter(stmt);
  collector.Walk(expr);
  SortTargets(out);
  return out;
}

std::string MaskedSequence::Text() const {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !IsAssignmentPrefixMask(*this, i - 1)) out += ' ';
    out += tokens[i].lexeme;
  }
  return out;
}

std::string MaskedSequence::TextWithin(const Span& range) const {
  std::string out;
  bool first = true;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const auto& t = tokens[i];
    if (t.span.offset < range.offset || t.span.offset >= range.end()) continue;
    if (!first && !IsAssignmentPrefixMask(*this, i - 1)) out += ' ';
    out += t.lexeme;
    first = false;
  }
  return out;
}

MaskedSequence MaskTarget(const lang::SourceUnit& unit, const MutationTarget& target) {
  const std::string& src = unit.source;
  if (target.span.end() > src.size() ||
      src.compare(target.span.offset, target.span.length, target.lexeme) != 0) {
    throw TargetStale("target '" + target.lexeme + "' at offset " +
                      std::to_string(target.span.offset) +
                      " does not match the source");
  }
  const lang::TokenStream tokens = lang::Tokenize(src);
  MaskedSequence seq;
  seq.origin = target;
  seq.original_lexeme = target.lexeme;
  lang::Token mask{std::string(lang::kMaskToken), lang::TokenKind::kMask,
                   target.span, target.line};
  bool placed = false;
  for (const auto& tok : tokens) {
    if (target.kind == NodeKind::kAssignmentOperator &&
        tok.span.offset == target.span.offset && tok.kind == lang::TokenKind::kOperator &&
        tok.span.length == target.span.length + 1 && tok.lexeme.back() == '=') {
      seq.mask_index = seq.tokens.size();
      seq.tokens.push_back(mask);
      seq.tokens.push_back(lang::Token{"=", lang::TokenKind::kOperator,
                                       Span{tok.span.end() - 1, 1}, tok.line});
      placed = true;
      continue;
    }
    if (target.kind != NodeKind::kAssignmentOperator &&
        target.span.Contains(tok.span)) {
      if (!placed) {
        if (tok.span.offset != target.span.offset) break;
        seq.mask_index = seq.tokens.size();
        seq.tokens.push_back(mask);
        placed = true;
      }
      continue;
    }
    if (tok.span.offset < target.span.end() && tok.span.end() > target.span.offset &&
        target.kind != NodeKind::kAssignmentOperator) {
      placed = false;  // partial overlap: span does not align with tokens
      break;
    }
    seq.tokens.push_back(tok);
  }
  if (!placed) {
    throw TargetStale("target '" + target.lexeme + "' does not align with tokens");
  }
  return seq;
}

MaskedSequence CropWindow(const MaskedSequence& seq, std::size_t max_tokens) {
  if (max_tokens < 1) throw InvalidLimit("window limit must be at least 1");
  const std::size_t n = seq.tokens.size();
  if (n <= max_tokens) return seq;
  const std::size_t before = (max_tokens - 1) / 2;
  std::size_t start = seq.mask_index >= before ? seq.mask_index - before : 0;
  start = std::min(start, n - max_tokens);
  MaskedSequence out = seq;
  out.tokens.assign(seq.tokens.begin() + static_cast<std::ptrdiff_t>(start),
                    seq.tokens.begin() + static_cast<std::ptrdiff_t>(start + max_tokens));
  out.mask_index = seq.mask_index - start;
  return out;
}

}  // namespace mutalm::targets
