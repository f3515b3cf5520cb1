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

#ifndef MUTALM_STATS_H_
#define MUTALM_STATS_H_

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace mutalm::stats {

// Largest n_effective for which the exact signed-rank distribution is used.
inline constexpr int kExactLimit = 25;

struct PairedSample {
  std::vector<std::string> labels;
  std::vector<double> x;
  std::vector<double> y;
};

struct WilcoxonResult {
  double p_value = 1.0;
  int n_effective = 0;
  double w_plus = 0.0;  // rank sum of the positive differences
  bool exact = true;
};

// One-sided signed-rank test of "x tends to exceed y". Zero differences are
// dropped, tied magnitudes share their average rank. Throws EmptySample.
WilcoxonResult WilcoxonPairedOneSided(const PairedSample& s);

// P(W+ >= observed) under the null, from the exact distribution over all
// sign assignments of `ranks`. Ranks must be multiples of 0.5.
double WilcoxonExactP(const std::vector<double>& ranks, double w_plus);

// Normal approximation with continuity and tie correction.
double WilcoxonNormalP(const std::vector<double>& ranks, double w_plus);

// Vargha-Delaney A12 over all cross pairs. Throws EmptySample.
double VarghaDelaneyA12(const std::vector<double>& x, const std::vector<double>& y);

struct StatSummary {
  double p_value = 1.0;
  double a12 = 0.5;
  int n_effective = 0;
};

StatSummary Summarize(const PairedSample& s);

enum class Threshold { kAboveZero, kAtLeastNinety };

const char* ThresholdName(Threshold threshold);
bool Meets(double ratio, Threshold threshold);

struct OverlapReport {
  std::vector<std::string> approaches;  // sorted
  Threshold threshold = Threshold::kAboveZero;
  // Region bitmask over `approaches` -> bugs in it. Every mask is present.
  std::map<unsigned, std::vector<std::string>> regions;

  std::string RegionName(unsigned mask) const;
};

// results: approach -> bug -> detection ratio. Throws UniverseMismatch when
// the approaches do not cover the same bugs.
OverlapReport DetectionOverlap(
    const std::map<std::string, std::map<std::string, double>>& results,
    Threshold threshold);

nlohmann::ordered_json ToJson(const OverlapReport& report);

}  // namespace mutalm::stats

#endif  // MUTALM_STATS_H_
