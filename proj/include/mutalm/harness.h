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

#ifndef MUTALM_HARNESS_H_
#define MUTALM_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mutalm/lang/ast.h"

namespace mutalm::harness {

inline constexpr std::uint64_t kDefaultFuel = 100000;
inline constexpr int kMaxCallDepth = 200;

enum class RuntimeErrorKind {
  kDivisionByZero,
  kNullDereference,
  kArrayIndexOutOfBounds,
  kOverflow,
  kStackOverflow,
};

const char* ErrorKindName(RuntimeErrorKind kind);
std::optional<RuntimeErrorKind> ParseErrorKind(const std::string& name);

struct Expectation {
  // Exactly one of the two is set.
  std::optional<nlohmann::json> value;
  std::optional<RuntimeErrorKind> error;
};

struct TestCase {
  std::string name;
  std::string entry;  // "Class.method"
  // Arguments as JSON; objects decode to instances of the parameter's class.
  std::vector<nlohmann::json> args;
  // Field values of the receiver instance; defaults when absent.
  std::optional<nlohmann::json> receiver;
  Expectation expect;
};

// Test-suite file. Throws SchemaError.
std::vector<TestCase> SuiteFromJson(const nlohmann::json& doc);

enum class Verdict { kPass, kFailValue, kRuntimeError, kTimeout };

const char* VerdictName(Verdict verdict);

struct TestOutcome {
  Verdict verdict = Verdict::kPass;
  // Returned value (null for void), or nothing after an error or timeout.
  std::optional<nlohmann::json> value;
  std::optional<RuntimeErrorKind> error;

  // Verdict plus the observable (value or error kind).
  bool SameAs(const TestOutcome& other) const;
};

// Interprets test.entry on fresh state. Throws SuiteInvalid when the entry
// does not exist or the arguments do not fit its parameters.
TestOutcome RunTest(const lang::SourceUnit& program, const TestCase& test,
                    std::uint64_t fuel = kDefaultFuel);

struct KillMatrix {
  std::vector<std::string> mutant_ids;
  std::vector<std::string> test_names;
  std::vector<std::vector<bool>> kills;  // [mutant][test]
  std::vector<std::string> revealing_tests;
  std::string approach;
  // Optional bug label; empty when absent from the file.
  std::string bug;

  friend bool operator==(const KillMatrix&, const KillMatrix&) = default;
};

struct ProgramUnderTest {
  std::string id;
  lang::SourceUnit unit;
};

struct HarnessOptions {
  std::uint64_t fuel = kDefaultFuel;
  unsigned jobs = 1;
};

// Kills by outcome inequality against the original. Revealing tests are the
// tests that do not pass on `buggy`. Throws SuiteInvalid when a test does
// not fit the original, Error when buggy does not validate.
KillMatrix BuildKillMatrix(const lang::SourceUnit& original,
                           const std::vector<ProgramUnderTest>& mutants,
                           const std::vector<TestCase>& suite,
                           const lang::SourceUnit* buggy, const HarnessOptions& options);

// killed / total; nullopt for an empty matrix.
std::optional<double> MutationScore(const KillMatrix& matrix);

nlohmann::ordered_json ToJson(const KillMatrix& matrix);
// Throws SchemaError with the offending path.
KillMatrix KillMatrixFromJson(const nlohmann::json& doc);

void SaveKillMatrix(const KillMatrix& matrix, const std::string& path);
KillMatrix LoadKillMatrix(const std::string& path);

}  // namespace mutalm::harness

#endif  // MUTALM_HARNESS_H_
