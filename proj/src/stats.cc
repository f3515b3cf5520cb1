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

#include "mutalm/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "mutalm/errors.h"

namespace mutalm::stats {

namespace {

// Average ranks of |d| (1-based), ties sharing the mean rank.
std::vector<double> AverageRanks(const std::vector<double>& magnitudes) {
  std::vector<std::size_t> idx(magnitudes.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return magnitudes[a] < magnitudes[b]; });
  std::vector<double> ranks(magnitudes.size());
  std::size_t i = 0;
  while (i < idx.size()) {
    std::size_t j = i;
    while (j + 1 < idx.size() && magnitudes[idx[j + 1]] == magnitudes[idx[i]]) ++j;
    const double avg = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double WilcoxonExactP(const std::vector<double>& ranks, double w_plus) {
  // Work on doubled ranks so average ranks stay integral.
  std::vector<long> doubled;
  long total = 0;
  for (double r : ranks) {
    doubled.push_back(std::lround(2.0 * r));
    total += doubled.back();
  }
  std::vector<double> ways(static_cast<std::size_t>(total) + 1, 0.0);
  ways[0] = 1.0;
  long reach = 0;
  for (long r : doubled) {
    for (long s = reach; s >= 0; --s) {
      ways[static_cast<std::size_t>(s + r)] += ways[static_cast<std::size_t>(s)];
    }
    reach += r;
  }
  const long observed = std::lround(2.0 * w_plus);
  double tail = 0.0;
  for (long s = std::max(0L, observed); s <= total; ++s) tail += ways[static_cast<std::size_t>(s)];
  return std::min(1.0, tail / std::ldexp(1.0, static_cast<int>(ranks.size())));
}

double WilcoxonNormalP(const std::vector<double>& ranks, double w_plus) {
  const double n = static_cast<double>(ranks.size());
  const double mean = n * (n + 1.0) / 4.0;
  double variance = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0;
  std::vector<double> sorted = ranks;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const double t = static_cast<double>(j - i);
    variance -= (t * t * t - t) / 48.0;
    i = j;
  }
  if (variance <= 0.0) return 1.0;
  const double z = (w_plus - mean - 0.5) / std::sqrt(variance);
  return std::min(1.0, 0.5 * std::erfc(z / std::sqrt(2.0)));
}

WilcoxonResult WilcoxonPairedOneSided(const PairedSample& s) {
  if (s.x.empty() || s.x.size() != s.y.size()) {
    throw EmptySample("paired sample must be non-empty with equal lengths");
  }
  std::vector<double> diffs;
  for (std::size_t i = 0; i < s.x.size(); ++i) {
    const double d = s.x[i] - s.y[i];
    if (d != 0.0) diffs.push_back(d);
  }
  WilcoxonResult r;
  r.n_effective = static_cast<int>(diffs.size());
  if (diffs.empty()) return r;
  std::vector<double> magnitudes;
  for (double d : diffs) magnitudes.push_back(std::fabs(d));
  const auto ranks = AverageRanks(magnitudes);
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i] > 0) r.w_plus += ranks[i];
  }
  r.exact = r.n_effective <= kExactLimit;
  r.p_value = r.exact ? WilcoxonExactP(ranks, r.w_plus) : WilcoxonNormalP(ranks, r.w_plus);
  return r;
}

double VarghaDelaneyA12(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.empty() || y.empty()) throw EmptySample("A12 needs two non-empty samples");
  std::vector<double> sorted = y;
  std::sort(sorted.begin(), sorted.end());
  double wins = 0.0;
  for (double xi : x) {
    const auto [lo, hi] = std::equal_range(sorted.begin(), sorted.end(), xi);
    wins += static_cast<double>(lo - sorted.begin()) + 0.5 * static_cast<double>(hi - lo);
  }
  return wins / (static_cast<double>(x.size()) * static_cast<double>(y.size()));
}

StatSummary Summarize(const PairedSample& s) {
  const auto w = WilcoxonPairedOneSided(s);
  return StatSummary{w.p_value, VarghaDelaneyA12(s.x, s.y), w.n_effective};
}

const char* ThresholdName(Threshold threshold) {
  return threshold == Threshold::kAboveZero ? ">0" : ">=0.9";
}

bool Meets(double ratio, Threshold threshold) {
  return threshold == Threshold::kAboveZero ? ratio > 0.0 : ratio >= 0.9;
}

std::string OverlapReport::RegionName(unsigned mask) const {
  std::string name;
  for (std::size_t i = 0; i < approaches.size(); ++i) {
    if ((mask >> i & 1u) == 0) continue;
    if (!name.empty()) name += "&";
    name += approaches[i];
  }
  return name.empty() ? "none" : name;
}

OverlapReport DetectionOverlap(
    const std::map<std::string, std::map<std::string, double>>& results,
    Threshold threshold) {
  OverlapReport report;
  report.threshold = threshold;
  if (results.size() > 16) throw Error("too many approaches for an overlap report");
  for (const auto& [approach, _] : results) report.approaches.push_back(approach);
  const std::map<std::string, double>* reference =
      results.empty() ? nullptr : &results.begin()->second;
  for (const auto& [approach, bugs] : results) {
    bool same = bugs.size() == reference->size();
    for (auto a = bugs.begin(), b = reference->begin(); same && a != bugs.end(); ++a, ++b) {
      same = a->first == b->first;
    }
    if (!same) {
      throw UniverseMismatch("approach " + approach + " covers a different set of bugs");
    }
  }
  for (unsigned mask = 0; mask < (1u << report.approaches.size()); ++mask) {
    report.regions[mask];
  }
  if (reference == nullptr) return report;
  for (const auto& [bug, _] : *reference) {
    unsigned mask = 0;
    for (std::size_t i = 0; i < report.approaches.size(); ++i) {
      if (Meets(results.at(report.approaches[i]).at(bug), threshold)) mask |= 1u << i;
    }
    report.regions[mask].push_back(bug);
  }
  return report;
}

nlohmann::ordered_json ToJson(const OverlapReport& report) {
  nlohmann::ordered_json doc;
  doc["threshold"] = ThresholdName(report.threshold);
  doc["approaches"] = report.approaches;
  doc["regions"] = nlohmann::ordered_json::array();
  for (const auto& [mask, bugs] : report.regions) {
    nlohmann::ordered_json region;
    region["region"] = report.RegionName(mask);
    region["count"] = bugs.size();
    region["bugs"] = bugs;
    doc["regions"].push_back(std::move(region));
  }
  return doc;
}

}  // namespace mutalm::stats
