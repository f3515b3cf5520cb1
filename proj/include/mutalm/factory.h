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

#ifndef MUTALM_FACTORY_H_
#define MUTALM_FACTORY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mutalm/lang/ast.h"
#include "mutalm/predictor.h"
#include "mutalm/targets.h"

namespace mutalm::factory {

enum class MutantOrder { kFirst, kSecond };

const char* OrderName(MutantOrder order);

struct Mutant {
  std::string id;
  MutantOrder order = MutantOrder::kFirst;
  int line = 0;
  // Node kind name for first-order mutants, seeding scheme for second-order.
  std::string category;
  targets::NodeKind node_kind = targets::NodeKind::kIdentifier;
  std::string original_lexeme;
  std::string replacement_lexeme;
  int rank = 0;
  // Canonical text of the mutated program.
  std::string rendered_source;
  std::uint64_t normalized_key = 0;
  // Second-order only: the seeded condition before replacement.
  std::string seeded_condition;
};

// Hash of the token lexemes of `source`; layout and comments do not matter.
std::uint64_t NormalizedKey(const std::string& source);

struct Candidate {
  Mutant mutant;
  bool valid = false;
};

// Splices the prediction over the masked span of `unit.source`, re-parses
// and validates. `unit` must be the unit `seq` was masked from. Throws
// SpliceUnparseable when the result does not lex or parse.
Candidate Substitute(const lang::SourceUnit& unit, const targets::MaskedSequence& seq,
                     const predictor::Prediction& p);

// Lines visited in seeded random order, one uniformly chosen mutant per line
// per sweep; first-order mutants all come before second-order ones.
std::vector<Mutant> SelectionOrder(std::vector<Mutant> mutants, std::uint64_t seed);

struct OrderStats {
  int targets = 0;
  int prediction_failed = 0;
  int predicted = 0;
  int exact_match = 0;
  int duplicate = 0;
  int non_compilable = 0;
  int emitted = 0;
  // Valid, distinct mutants cut by the quota.
  int truncated = 0;

  bool Conserved() const {
    return predicted == exact_match + duplicate + non_compilable + emitted + truncated;
  }
};

struct GenerationStats {
  OrderStats first;
  OrderStats second;
  int seeded_enumerated = 0;
  int seeded_invalid = 0;
};

struct MutantSet {
  std::string program_id;
  std::uint64_t seed = 0;
  std::vector<Mutant> mutants;
  GenerationStats stats;
};

struct GenerateOptions {
  predictor::PredictorConfig predictor;
  std::optional<int> quota;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  // Skip condition seeding.
  bool first_order_only = false;
  std::string program_id;
};

// The whole pipeline on a canonical, valid unit. Throws EmptyUnit when the
// unit has no targets, ProtocolError from the predictor, and Error when
// every prediction request failed.
MutantSet Generate(const lang::SourceUnit& unit, predictor::Predictor& predictor,
                   const GenerateOptions& options);

// Single-hunk, zero-context unified diff between two texts.
std::string UnifiedDiff(const std::string& before, const std::string& after,
                        const std::string& label);
// Applies a diff made by UnifiedDiff. Throws Error when it does not fit.
std::string ApplyDiff(const std::string& before, const std::string& diff);

// Mutant-set file. `original` is the canonical program text the diffs are
// taken against.
nlohmann::ordered_json ToJson(const MutantSet& set, const std::string& original);

struct LoadedMutant {
  std::string id;
  MutantOrder order = MutantOrder::kFirst;
  int line = 0;
  std::string category;
  std::string source;
};

struct LoadedMutantSet {
  std::string program;
  std::uint64_t seed = 0;
  std::vector<LoadedMutant> mutants;
};

// Rebuilds mutant sources from their diffs. Throws SchemaError.
LoadedMutantSet MutantSetFromJson(const nlohmann::json& doc, const std::string& original);

}  // namespace mutalm::factory

#endif  // MUTALM_FACTORY_H_
