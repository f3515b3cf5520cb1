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

#include "mutalm/devsim.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "mutalm/errors.h"

namespace mutalm::devsim {

using harness::KillMatrix;

std::optional<long> LineOfId(const std::string& id) {
  const auto colon = id.find(':');
  if (colon == 0 || colon == std::string::npos || colon > 9) return std::nullopt;
  long line = 0;
  for (std::size_t i = 0; i < colon; ++i) {
    if (id[i] < '0' || id[i] > '9') return std::nullopt;
    line = line * 10 + (id[i] - '0');
  }
  return line;
}

std::vector<std::size_t> AnalysisOrder(const KillMatrix& matrix, Rng& rng) {
  std::vector<long> lines;
  lines.reserve(matrix.mutant_ids.size());
  for (std::size_t i = 0; i < matrix.mutant_ids.size(); ++i) {
    // Line-less ids get negative keys so they never share a line.
    lines.push_back(LineOfId(matrix.mutant_ids[i]).value_or(-1 - static_cast<long>(i)));
  }
  return RoundRobinOrder(lines, rng);
}

SessionTrace SimulateOrdered(const KillMatrix& matrix, const std::vector<std::size_t>& order,
                             Rng& rng, int effort_cap) {
  const std::set<std::string> revealing(matrix.revealing_tests.begin(),
                                        matrix.revealing_tests.end());
  std::vector<bool> is_revealing(matrix.test_names.size());
  for (std::size_t t = 0; t < matrix.test_names.size(); ++t) {
    is_revealing[t] = revealing.count(matrix.test_names[t]) != 0;
  }
  std::vector<bool> gone(matrix.mutant_ids.size(), false);
  SessionTrace trace;
  for (std::size_t m : order) {
    if (gone[m]) continue;
    if (trace.total_effort >= effort_cap) break;
    ++trace.total_effort;
    trace.analyzed_order.push_back(matrix.mutant_ids[m]);
    gone[m] = true;
    std::vector<std::size_t> killers;
    for (std::size_t t = 0; t < matrix.test_names.size(); ++t) {
      if (matrix.kills[m][t]) killers.push_back(t);
    }
    if (killers.empty()) continue;  // taken as equivalent
    const std::size_t t = killers[rng.Below(killers.size())];
    trace.selected_tests.push_back(matrix.test_names[t]);
    if (is_revealing[t] && !trace.effort_to_first_reveal) {
      trace.effort_to_first_reveal = trace.total_effort;
    }
    for (std::size_t other = 0; other < gone.size(); ++other) {
      if (matrix.kills[other][t]) gone[other] = true;
    }
  }
  trace.bug_found = trace.effort_to_first_reveal.has_value();
  return trace;
}

SessionTrace SimulateSession(const KillMatrix& matrix, std::uint64_t order_seed,
                             int effort_cap) {
  Rng rng(order_seed);
  const auto order = AnalysisOrder(matrix, rng);
  return SimulateOrdered(matrix, order, rng, effort_cap);
}

double CampaignResult::DetectionAt(double fraction) const {
  const auto effort = static_cast<long>(std::floor(fraction * effort_cap + 1e-9));
  if (effort <= 0 || curve.empty()) return 0.0;
  const auto idx = static_cast<std::size_t>(std::min<long>(effort, effort_cap)) - 1;
  return curve[idx].second;
}

CampaignResult RunCampaign(const KillMatrix& matrix, int repetitions, int effort_cap,
                           std::uint64_t base_seed, unsigned jobs) {
  if (repetitions < 1) throw Error("repetitions must be at least 1");
  if (effort_cap < 1) throw Error("effort cap must be at least 1");
  std::vector<SessionTrace> traces(static_cast<std::size_t>(repetitions));
  ParallelFor(traces.size(), jobs, [&](std::size_t i) {
    traces[i] = SimulateSession(matrix, base_seed + i, effort_cap);
  });
  CampaignResult r;
  r.bug = matrix.bug;
  r.approach = matrix.approach;
  r.repetitions = repetitions;
  r.effort_cap = effort_cap;
  std::vector<int> reveals_at(static_cast<std::size_t>(effort_cap) + 1, 0);
  int found = 0;
  double reveal_sum = 0.0;
  double effort_sum = 0.0;
  for (const auto& t : traces) {
    effort_sum += t.total_effort;
    if (!t.bug_found) continue;
    ++found;
    reveal_sum += *t.effort_to_first_reveal;
    ++reveals_at[static_cast<std::size_t>(*t.effort_to_first_reveal)];
  }
  int cumulative = 0;
  for (int e = 1; e <= effort_cap; ++e) {
    cumulative += reveals_at[static_cast<std::size_t>(e)];
    r.curve.emplace_back(static_cast<double>(e) / effort_cap,
                         static_cast<double>(cumulative) / repetitions);
  }
  r.detection_ratio = static_cast<double>(found) / repetitions;
  if (found > 0) r.mean_first_reveal = reveal_sum / found;
  r.mean_total_effort = effort_sum / repetitions;
  return r;
}

int UncappedEffort(const KillMatrix& matrix) {
  return std::max<int>(1, static_cast<int>(matrix.mutant_ids.size()));
}

int CommonEffortCap(const std::vector<const KillMatrix*>& matrices, int repetitions,
                    std::uint64_t base_seed, unsigned jobs) {
  if (matrices.empty()) throw Error("no approaches to compare");
  double least = 0.0;
  bool first = true;
  for (const KillMatrix* m : matrices) {
    const double mean =
        RunCampaign(*m, repetitions, UncappedEffort(*m), base_seed, jobs).mean_total_effort;
    if (first || mean < least) least = mean;
    first = false;
  }
  return std::max(1, static_cast<int>(std::lround(least)));
}

nlohmann::ordered_json ToJson(const CampaignResult& result) {
  nlohmann::ordered_json doc;
  doc["bug"] = result.bug;
  doc["approach"] = result.approach;
  doc["repetitions"] = result.repetitions;
  doc["effort_cap"] = result.effort_cap;
  doc["detection_ratio"] = result.detection_ratio;
  if (result.mean_first_reveal) {
    doc["mean_first_reveal_effort"] = *result.mean_first_reveal;
  } else {
    doc["mean_first_reveal_effort"] = nullptr;
  }
  doc["mean_total_effort"] = result.mean_total_effort;
  doc["curve"] = nlohmann::ordered_json::array();
  for (const auto& [f, d] : result.curve) doc["curve"].push_back({f, d});
  return doc;
}

}  // namespace mutalm::devsim
