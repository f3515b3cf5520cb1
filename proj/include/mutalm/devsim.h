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

#ifndef MUTALM_DEVSIM_H_
#define MUTALM_DEVSIM_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "mutalm/harness.h"
#include "mutalm/util.h"

// Simulated developer: analyse mutants one at a time, write a killing test
// for each live one, and count how many analyses it takes to write a test
// that reveals the bug.
namespace mutalm::devsim {

inline constexpr int kDefaultRepetitions = 100;

struct SessionTrace {
  std::vector<std::string> analyzed_order;
  std::vector<std::string> selected_tests;
  std::optional<int> effort_to_first_reveal;
  bool bug_found = false;
  int total_effort = 0;
};

// Line number encoded at the start of a mutant id ("12:..."), if any.
std::optional<long> LineOfId(const std::string& id);

// One mutant per line per sweep, lines in random order. Ids without a line
// each count as their own line.
std::vector<std::size_t> AnalysisOrder(const harness::KillMatrix& matrix, Rng& rng);

// Runs one session over a fixed analysis order; killing tests are drawn
// from `rng`.
SessionTrace SimulateOrdered(const harness::KillMatrix& matrix,
                             const std::vector<std::size_t>& order, Rng& rng,
                             int effort_cap);

// AnalysisOrder and SimulateOrdered on Rng(order_seed).
SessionTrace SimulateSession(const harness::KillMatrix& matrix, std::uint64_t order_seed,
                             int effort_cap);

struct CampaignResult {
  std::string bug;
  std::string approach;
  int repetitions = 0;
  int effort_cap = 1;
  double detection_ratio = 0.0;
  // (effort / cap, fraction of sessions revealing within that effort) for
  // effort = 1..cap.
  std::vector<std::pair<double, double>> curve;
  // Mean over the sessions that found the bug; nullopt when none did.
  std::optional<double> mean_first_reveal;
  double mean_total_effort = 0.0;

  // Step-curve value at an effort fraction in [0, 1].
  double DetectionAt(double fraction) const;
};

// Sessions use seeds base_seed + i.
CampaignResult RunCampaign(const harness::KillMatrix& matrix, int repetitions,
                           int effort_cap, std::uint64_t base_seed, unsigned jobs = 1);

// Effort cap that lets every session run to the end.
int UncappedEffort(const harness::KillMatrix& matrix);

// Least mean uncapped total effort among the matrices, rounded, at least 1.
int CommonEffortCap(const std::vector<const harness::KillMatrix*>& matrices,
                    int repetitions, std::uint64_t base_seed, unsigned jobs = 1);

nlohmann::ordered_json ToJson(const CampaignResult& result);

}  // namespace mutalm::devsim

#endif  // MUTALM_DEVSIM_H_
