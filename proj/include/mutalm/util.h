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

#ifndef MUTALM_UTIL_H_
#define MUTALM_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace mutalm {

// 64-bit FNV-1a. Stable across platforms; used for stub prediction ordering,
// mutant ids and normalized keys.
class Fnv1a {
 public:
  Fnv1a& Add(std::string_view bytes);
  // Adds a record separator so that ("ab","c") and ("a","bc") differ.
  Fnv1a& Separator();
  std::uint64_t value() const { return state_; }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t Hash64(std::string_view bytes);

// First eight lowercase hex digits of Hash64(bytes).
std::string Hash8(std::string_view bytes);

std::string Hex64(std::uint64_t value);

// Seeded generator with platform-independent bounded draws (the standard
// distributions are implementation-defined, which would break byte-identical
// outputs across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);

  template <typename T>
  void Shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

// Positions 0..groups.size()-1 ordered by repeated sweeps over the distinct
// group keys (shuffled once), taking one uniformly chosen remaining item per
// group per sweep.
std::vector<std::size_t> RoundRobinOrder(const std::vector<long>& groups, Rng& rng);

// Runs body(i) for i in [0, count) on up to `jobs` threads. Results must be
// written into per-index slots by the caller; no ordering is implied.
// Exceptions thrown by body are rethrown (the first one by index).
void ParallelFor(std::size_t count, unsigned jobs,
                 const std::function<void(std::size_t)>& body);

unsigned DefaultJobs();

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view contents);

}  // namespace mutalm

#endif  // MUTALM_UTIL_H_
