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

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mutalm/cli.h"
#include "mutalm/harness.h"
#include "mutalm/predictor.h"
#include "mutalm/util.h"
#include "test_support.h"

namespace mutalm::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome Call(std::vector<std::string> args) {
  ::unsetenv(predictor::kEndpointEnv);
  args.insert(args.begin(), "mutalm");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = Run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::ScratchDir(::testing::UnitTest::GetInstance()->current_test_info()->name());
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

const std::string kProgram = testing::DemoPath("fraction.mj");
const std::string kBuggy = testing::DemoPath("fraction_buggy.mj");
const std::string kSuite = testing::DemoPath("fraction_suite.json");

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(Call({}).code, kExitUsage);
  EXPECT_EQ(Call({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(Call({"mutate", kProgram, "--quota", "0", "--out", Path("m")}).code, kExitUsage);
  EXPECT_EQ(Call({"mutate", kProgram, "--k", "0", "--out", Path("m")}).code, kExitUsage);
  EXPECT_EQ(Call({"mutate", kProgram, "--predictor-mode", "remote", "--out", Path("m")}).code,
            kExitUsage);
  EXPECT_EQ(Call({"mutate", kProgram, "--predictor-mode", "psychic"}).code, kExitUsage);
  EXPECT_EQ(Call({"execute", "x.json"}).code, kExitUsage);
}

TEST_F(CliTest, InputErrors) {
  EXPECT_EQ(Call({"mutate", Path("missing.mj"), "--out", Path("m")}).code, kExitInput);
  WriteFile(Path("bad.mj"), "class A { int f() { return 1 + ; } }");
  EXPECT_EQ(Call({"mutate", Path("bad.mj"), "--out", Path("m")}).code, kExitInput);
  WriteFile(Path("invalid.mj"), "class A { int f() { return c; } }");
  const auto invalid = Call({"mutate", Path("invalid.mj"), "--out", Path("m")});
  EXPECT_EQ(invalid.code, kExitInput);
  EXPECT_NE(invalid.err.find("name-resolution"), std::string::npos) << invalid.err;
}

TEST_F(CliTest, UnreachablePredictor) {
  const auto r = Call({"mutate", kProgram, "--predictor-mode", "remote", "--predictor-url",
                       "http://127.0.0.1:1", "--out", Path("m")});
  EXPECT_EQ(r.code, kExitPredictor) << r.err;
}

TEST_F(CliTest, MutateCoversCategories) {
  ASSERT_EQ(Call({"mutate", kProgram, "--out", Path("m")}).code, kExitOk);
  const json doc = json::parse(ReadFile(Path("m/mutants.json")));
  ASSERT_FALSE(doc["mutants"].empty());
  std::set<std::string> kinds;
  for (const auto& m : doc["mutants"]) {
    if (m["order"] == "first") kinds.insert(m["kind"].get<std::string>());
  }
  EXPECT_GE(kinds.size(), 6u);
  EXPECT_TRUE(fs::exists(Path("m/mutants.diff")));
}

TEST_F(CliTest, ExecuteScoresDemo) {
  ASSERT_EQ(Call({"mutate", kProgram, "--out", Path("m")}).code, kExitOk);
  const auto r = Call({"execute", Path("m/mutants.json"), "--suite", kSuite, "--buggy", kBuggy,
                       "--program", kProgram, "--out", Path("e")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto m = harness::LoadKillMatrix(Path("e/kill_matrix.json"));
  const double score = harness::MutationScore(m).value();
  EXPECT_GT(score, 0.0);
  EXPECT_LE(score, 1.0);
  EXPECT_EQ(m.revealing_tests, (std::vector<std::string>{"reduceZero"}));
}

TEST_F(CliTest, EmptyMutantSet) {
  WriteFile(Path("empty.json"), json{{"program", kProgram}, {"seed", 0},
                                     {"mutants", json::array()}}.dump());
  const auto r = Call({"execute", Path("empty.json"), "--suite", kSuite, "--out", Path("e")});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("mutation score: n/a"), std::string::npos) << r.out;
}

TEST_F(CliTest, UnknownEntryPoint) {
  ASSERT_EQ(Call({"mutate", kProgram, "--quota", "3", "--out", Path("m")}).code, kExitOk);
  WriteFile(Path("suite.json"),
            R"({"tests": [{"name": "x", "entry": "Fraction.nope", "args": [], "expect": {"value": 1}}]})");
  EXPECT_EQ(Call({"execute", Path("m/mutants.json"), "--suite", Path("suite.json"),
                  "--program", kProgram, "--out", Path("e")})
                .code,
            kExitInput);
}

void WriteWorkedMatrix(const std::string& path, const std::string& approach) {
  harness::KillMatrix m;
  m.mutant_ids = {"1:binary-operator:1:00000001", "2:literal:1:00000002"};
  m.test_names = {"t1", "t2"};
  m.kills = {{true, false}, {false, true}};
  m.revealing_tests = {"t2"};
  m.approach = approach;
  m.bug = "worked";
  harness::SaveKillMatrix(m, path);
}

TEST_F(CliTest, SimulateWorkedExample) {
  WriteWorkedMatrix(Path("km.json"), "demo");
  ASSERT_EQ(Call({"simulate", Path("km.json"), "--repetitions", "10000", "--out", Path("s")}).code,
            kExitOk);
  const json doc = json::parse(ReadFile(Path("s/campaign.json")));
  EXPECT_DOUBLE_EQ(doc["detection_ratio"].get<double>(), 1.0);
  EXPECT_NEAR(doc["mean_first_reveal_effort"].get<double>(), 1.5, 0.05);
  EXPECT_TRUE(fs::exists(Path("s/curve.csv")));
  EXPECT_EQ(Call({"simulate", Path("km.json"), "--effort-cap", "auto"}).code, kExitUsage);
  EXPECT_EQ(Call({"simulate", Path("km.json"), "--effort-cap", "-3"}).code, kExitUsage);
}

TEST_F(CliTest, CompareAgainstItself) {
  WriteWorkedMatrix(Path("a.json"), "a");
  WriteWorkedMatrix(Path("b.json"), "b");
  const auto r = Call({"compare", Path("a.json"), Path("b.json"), "--repetitions", "50",
                       "--out", Path("c")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(ReadFile(Path("c/comparison.json")));
  ASSERT_EQ(doc["pairs"].size(), 2u);
  for (const auto& p : doc["pairs"]) {
    EXPECT_DOUBLE_EQ(p["p_value"].get<double>(), 1.0);
    EXPECT_DOUBLE_EQ(p["a12"].get<double>(), 0.5);
  }
  EXPECT_EQ(Call({"compare", Path("a.json"), Path("a.json")}).code, kExitInput);
  EXPECT_EQ(Call({"compare", Path("a.json")}).code, kExitUsage);
}

TEST_F(CliTest, CompareSecondOrderOnlyKiller) {
  harness::KillMatrix conv;
  conv.mutant_ids = {"3:literal:1:0000000a", "4:identifier:1:0000000b"};
  conv.test_names = {"t1", "reveal"};
  conv.kills = {{true, false}, {true, false}};
  conv.revealing_tests = {"reveal"};
  conv.approach = "conventional";
  conv.bug = "only-second";
  harness::KillMatrix full = conv;
  full.mutant_ids.push_back("3:conditions:1:0000000c");
  full.kills.push_back({false, true});
  full.approach = "full";
  harness::SaveKillMatrix(conv, Path("conv.json"));
  harness::SaveKillMatrix(full, Path("full.json"));
  const auto r = Call({"compare", Path("conv.json"), Path("full.json"), "--repetitions", "200",
                       "--out", Path("c")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const json doc = json::parse(ReadFile(Path("c/comparison.json")));
  std::map<std::string, double> ratio;
  for (const auto& c : doc["campaigns"]) {
    ratio[c["approach"].get<std::string>()] = c["detection_ratio"].get<double>();
  }
  EXPECT_DOUBLE_EQ(ratio.at("conventional"), 0.0);
  EXPECT_GT(ratio.at("full"), 0.0);
  EXPECT_GE(ratio.at("full"), ratio.at("conventional"));
}

// Runs mutate/execute/simulate into `out` with the given worker count.
void Pipeline(const std::string& out, const std::string& jobs) {
  ASSERT_EQ(Call({"mutate", kProgram, "--seed", "7", "--jobs", jobs, "--out", out + "/m"}).code,
            kExitOk);
  ASSERT_EQ(Call({"execute", out + "/m/mutants.json", "--suite", kSuite, "--buggy", kBuggy,
                  "--program", kProgram, "--jobs", jobs, "--out", out + "/e"})
                .code,
            kExitOk);
  ASSERT_EQ(Call({"simulate", out + "/e/kill_matrix.json", "--seed", "7", "--repetitions", "200",
                  "--jobs", jobs, "--out", out + "/s"})
                .code,
            kExitOk);
}

TEST_F(CliTest, ByteIdenticalOutputs) {
  Pipeline(Path("one"), "1");
  Pipeline(Path("again"), "1");
  Pipeline(Path("eight"), "8");
  for (const char* file : {"m/mutants.json", "m/mutants.diff", "e/kill_matrix.json",
                           "s/campaign.json", "s/curve.csv"}) {
    const std::string base = ReadFile(Path(std::string("one/") + file));
    EXPECT_FALSE(base.empty()) << file;
    EXPECT_EQ(base, ReadFile(Path(std::string("again/") + file))) << file;
    EXPECT_EQ(base, ReadFile(Path(std::string("eight/") + file))) << file;
  }
}

}  // namespace
}  // namespace mutalm::cli
