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

#include "mutalm/harness.h"

#include <set>

#include "mutalm/errors.h"
#include "mutalm/lang/validator.h"
#include "mutalm/util.h"

namespace mutalm::harness {

using nlohmann::json;

namespace {

const json& Field(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing");
  return *it;
}

std::string StringAt(const json& obj, const std::string& key, const std::string& path) {
  const json& v = Field(obj, key, path);
  if (!v.is_string()) throw SchemaError(path + "." + key, "expected a string");
  return v.get<std::string>();
}

std::vector<std::string> StringList(const json& obj, const std::string& key,
                                    const std::string& path) {
  const json& v = Field(obj, key, path);
  const std::string here = path + "." + key;
  if (!v.is_array()) throw SchemaError(here, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_string()) {
      throw SchemaError(here + "[" + std::to_string(i) + "]", "expected a string");
    }
    out.push_back(v[i].get<std::string>());
  }
  return out;
}

}  // namespace

std::vector<TestCase> SuiteFromJson(const json& doc) {
  const json& tests = Field(doc, "tests", "$");
  if (!tests.is_array()) throw SchemaError("$.tests", "expected an array");
  std::vector<TestCase> suite;
  std::set<std::string> names;
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const std::string path = "$.tests[" + std::to_string(i) + "]";
    const json& t = tests[i];
    TestCase tc;
    tc.name = StringAt(t, "name", path);
    if (!names.insert(tc.name).second) {
      throw SchemaError(path + ".name", "duplicate test name " + tc.name);
    }
    tc.entry = StringAt(t, "entry", path);
    if (tc.entry.find('.') == std::string::npos) {
      throw SchemaError(path + ".entry", "expected Class.method");
    }
    const json& args = Field(t, "args", path);
    if (!args.is_array()) throw SchemaError(path + ".args", "expected an array");
    tc.args.assign(args.begin(), args.end());
    if (t.contains("this")) tc.receiver = t["this"];
    const json& expect = Field(t, "expect", path);
    if (!expect.is_object() || expect.size() != 1) {
      throw SchemaError(path + ".expect", "expected {\"value\": v} or {\"error\": kind}");
    }
    if (expect.contains("value")) {
      tc.expect.value = expect["value"];
    } else if (expect.contains("error") && expect["error"].is_string()) {
      tc.expect.error = ParseErrorKind(expect["error"].get<std::string>());
      if (!tc.expect.error) {
        throw SchemaError(path + ".expect.error", "unknown error kind");
      }
    } else {
      throw SchemaError(path + ".expect", "expected {\"value\": v} or {\"error\": kind}");
    }
    suite.push_back(std::move(tc));
  }
  return suite;
}

KillMatrix BuildKillMatrix(const lang::SourceUnit& original,
                           const std::vector<ProgramUnderTest>& mutants,
                           const std::vector<TestCase>& suite,
                           const lang::SourceUnit* buggy, const HarnessOptions& options) {
  KillMatrix m;
  for (const auto& t : suite) m.test_names.push_back(t.name);
  std::vector<TestOutcome> baseline;
  for (const auto& t : suite) baseline.push_back(RunTest(original, t, options.fuel));
  if (buggy != nullptr) {
    if (!lang::Validate(*buggy).ok) throw Error("the buggy version does not validate");
    for (const auto& t : suite) {
      if (RunTest(*buggy, t, options.fuel).verdict != Verdict::kPass) {
        m.revealing_tests.push_back(t.name);
      }
    }
  }
  m.mutant_ids.reserve(mutants.size());
  for (const auto& mu : mutants) m.mutant_ids.push_back(mu.id);
  m.kills.assign(mutants.size(), std::vector<bool>(suite.size(), false));
  std::vector<std::vector<char>> rows(mutants.size(), std::vector<char>(suite.size(), 0));
  ParallelFor(mutants.size(), std::max(1u, options.jobs), [&](std::size_t i) {
    for (std::size_t t = 0; t < suite.size(); ++t) {
      rows[i][t] = RunTest(mutants[i].unit, suite[t], options.fuel).SameAs(baseline[t]) ? 0 : 1;
    }
  });
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    for (std::size_t t = 0; t < suite.size(); ++t) m.kills[i][t] = rows[i][t] != 0;
  }
  return m;
}

std::optional<double> MutationScore(const KillMatrix& matrix) {
  if (matrix.mutant_ids.empty()) return std::nullopt;
  std::size_t killed = 0;
  for (const auto& row : matrix.kills) {
    for (bool k : row) {
      if (k) {
        ++killed;
        break;
      }
    }
  }
  return static_cast<double>(killed) / static_cast<double>(matrix.mutant_ids.size());
}

nlohmann::ordered_json ToJson(const KillMatrix& matrix) {
  nlohmann::ordered_json doc;
  if (!matrix.bug.empty()) doc["bug"] = matrix.bug;
  doc["approach"] = matrix.approach;
  doc["mutants"] = matrix.mutant_ids;
  doc["tests"] = matrix.test_names;
  doc["kills"] = nlohmann::ordered_json::array();
  for (const auto& row : matrix.kills) doc["kills"].push_back(row);
  doc["revealing_tests"] = matrix.revealing_tests;
  return doc;
}

KillMatrix KillMatrixFromJson(const json& doc) {
  KillMatrix m;
  m.mutant_ids = StringList(doc, "mutants", "$");
  m.test_names = StringList(doc, "tests", "$");
  m.revealing_tests = StringList(doc, "revealing_tests", "$");
  m.approach = StringAt(doc, "approach", "$");
  if (doc.contains("bug")) m.bug = StringAt(doc, "bug", "$");
  const json& kills = Field(doc, "kills", "$");
  if (!kills.is_array()) throw SchemaError("$.kills", "expected an array");
  if (kills.size() != m.mutant_ids.size()) {
    throw SchemaError("$.kills", "expected one row per mutant");
  }
  for (std::size_t i = 0; i < kills.size(); ++i) {
    const std::string path = "$.kills[" + std::to_string(i) + "]";
    if (!kills[i].is_array() || kills[i].size() != m.test_names.size()) {
      throw SchemaError(path, "expected one boolean per test");
    }
    std::vector<bool> row;
    for (std::size_t t = 0; t < kills[i].size(); ++t) {
      if (!kills[i][t].is_boolean()) {
        throw SchemaError(path + "[" + std::to_string(t) + "]", "expected a boolean");
      }
      row.push_back(kills[i][t].get<bool>());
    }
    m.kills.push_back(std::move(row));
  }
  const std::set<std::string> tests(m.test_names.begin(), m.test_names.end());
  for (std::size_t i = 0; i < m.revealing_tests.size(); ++i) {
    if (tests.count(m.revealing_tests[i]) == 0) {
      throw SchemaError("$.revealing_tests[" + std::to_string(i) + "]",
                        "not one of the listed tests");
    }
  }
  return m;
}

void SaveKillMatrix(const KillMatrix& matrix, const std::string& path) {
  WriteFile(path, ToJson(matrix).dump(2) + "\n");
}

KillMatrix LoadKillMatrix(const std::string& path) {
  json doc;
  try {
    doc = json::parse(ReadFile(path));
  } catch (const json::parse_error& e) {
    throw SchemaError("$", std::string("not valid JSON: ") + e.what());
  }
  return KillMatrixFromJson(doc);
}

}  // namespace mutalm::harness
