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

#include "mutalm/cli.h"

#include <cstdio>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mutalm/devsim.h"
#include "mutalm/errors.h"
#include "mutalm/factory.h"
#include "mutalm/harness.h"
#include "mutalm/lang/parser.h"
#include "mutalm/lang/validator.h"
#include "mutalm/predictor.h"
#include "mutalm/stats.h"
#include "mutalm/util.h"

namespace mutalm::cli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::uint64_t seed = 0;
  unsigned jobs = DefaultJobs();
  std::string out = ".";

  // mutate
  std::string program;
  std::optional<int> quota;
  int k = 5;
  std::string predictor_url;
  std::string predictor_mode = "stub";
  bool conventional = false;

  // execute
  std::string mutant_set;
  std::string suite;
  std::string buggy;
  std::string program_override;
  std::string approach = "mutalm";
  std::string bug_id;
  std::uint64_t fuel = harness::kDefaultFuel;

  // simulate / compare
  std::vector<std::string> matrices;
  int repetitions = devsim::kDefaultRepetitions;
  std::string effort_cap;
};

std::string Join(const fs::path& dir, const std::string& name) {
  return (dir / name).string();
}

fs::path PrepareOut(const std::string& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw Error("cannot create output directory " + out + ": " + ec.message());
  return fs::path(out);
}

json ReadJson(const std::string& path) {
  const std::string text = ReadFile(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("$", path + " is not valid JSON: " + std::string(e.what()));
  }
}

// Parses, validates and canonicalizes a program file.
lang::SourceUnit LoadProgram(const std::string& path, std::ostream& err) {
  const lang::SourceUnit parsed = lang::Parse(ReadFile(path));
  const auto report = lang::Validate(parsed);
  if (!report.ok) {
    for (const auto& d : report.diagnostics) {
      err << path << ":" << d.line << ": " << lang::CategoryName(d.category) << ": "
          << d.message << "\n";
    }
    throw Error(path + " does not validate");
  }
  return lang::Canonicalize(parsed);
}

std::string FormatDouble(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// --------------------------------------------------------------------------

int CmdMutate(const Options& o, std::ostream& out, std::ostream& err) {
  const lang::SourceUnit unit = LoadProgram(o.program, err);
  predictor::PredictorConfig cfg;
  cfg.k = o.k;
  if (!o.predictor_url.empty()) cfg.endpoint = o.predictor_url;
  cfg.mode = o.predictor_mode == "remote" ? predictor::Mode::kRemote : predictor::Mode::kStub;
  try {
    cfg = predictor::Resolve(cfg);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  auto predictor = predictor::MakePredictor(cfg);
  factory::GenerateOptions g;
  g.predictor = cfg;
  g.quota = o.quota;
  g.seed = o.seed;
  g.jobs = o.jobs;
  g.first_order_only = o.conventional;
  g.program_id = o.program;
  const factory::MutantSet set = factory::Generate(unit, *predictor, g);

  const fs::path dir = PrepareOut(o.out);
  WriteFile(Join(dir, "mutants.json"), factory::ToJson(set, unit.source).dump(2) + "\n");
  std::string listing;
  for (const auto& m : set.mutants) {
    listing += "# " + m.id + " (" + factory::OrderName(m.order) + ", " + m.category + ") '" +
               m.original_lexeme + "' -> '" + m.replacement_lexeme + "'\n";
    listing += factory::UnifiedDiff(unit.source, m.rendered_source,
                                   fs::path(set.program_id).filename().string());
  }
  WriteFile(Join(dir, "mutants.diff"), listing);

  const auto& s = set.stats;
  out << "mutants: " << set.mutants.size() << " (first-order " << s.first.emitted
      << ", second-order " << s.second.emitted << ")\n";
  for (const auto* st : {&s.first, &s.second}) {
    out << (st == &s.first ? "first" : "second") << ": predicted " << st->predicted
        << ", exact " << st->exact_match << ", duplicate " << st->duplicate
        << ", non-compilable " << st->non_compilable << ", emitted " << st->emitted
        << ", truncated " << st->truncated << ", failed targets " << st->prediction_failed
        << "\n";
  }
  return kExitOk;
}

int CmdExecute(const Options& o, std::ostream& out, std::ostream& err) {
  const json doc = ReadJson(o.mutant_set);
  std::string program_path = o.program_override;
  if (program_path.empty()) {
    if (!doc.is_object() || !doc.contains("program") || !doc["program"].is_string()) {
      throw SchemaError("$.program", "missing");
    }
    program_path = doc["program"].get<std::string>();
    if (!fs::exists(program_path)) {
      const fs::path beside = fs::path(o.mutant_set).parent_path() / program_path;
      if (fs::exists(beside)) program_path = beside.string();
    }
  }
  const lang::SourceUnit original = LoadProgram(program_path, err);
  const factory::LoadedMutantSet loaded = factory::MutantSetFromJson(doc, original.source);
  std::vector<harness::ProgramUnderTest> mutants(loaded.mutants.size());
  ParallelFor(loaded.mutants.size(), o.jobs, [&](std::size_t i) {
    const auto& m = loaded.mutants[i];
    try {
      mutants[i] = harness::ProgramUnderTest{m.id, lang::Parse(m.source)};
    } catch (const Error& e) {
      throw SchemaError("$.mutants[" + std::to_string(i) + "].diff",
                        std::string("mutant does not parse: ") + e.what());
    }
  });
  const auto suite = harness::SuiteFromJson(ReadJson(o.suite));
  std::optional<lang::SourceUnit> buggy;
  if (!o.buggy.empty()) buggy = LoadProgram(o.buggy, err);
  harness::HarnessOptions h;
  h.fuel = o.fuel;
  h.jobs = o.jobs;
  harness::KillMatrix matrix =
      harness::BuildKillMatrix(original, mutants, suite, buggy ? &*buggy : nullptr, h);
  matrix.approach = o.approach;
  matrix.bug = o.bug_id;

  const fs::path dir = PrepareOut(o.out);
  harness::SaveKillMatrix(matrix, Join(dir, "kill_matrix.json"));
  const auto score = harness::MutationScore(matrix);
  out << "mutants: " << matrix.mutant_ids.size() << ", tests: " << matrix.test_names.size()
      << ", revealing tests: " << matrix.revealing_tests.size() << "\n";
  out << "mutation score: " << (score ? FormatDouble(*score) : std::string("n/a")) << "\n";
  return kExitOk;
}

// "auto", "all" or a positive integer.
struct CapPolicy {
  enum Kind { kAuto, kAll, kFixed } kind = kAll;
  int value = 0;
};

CapPolicy ParseCap(const std::string& text, CapPolicy::Kind fallback) {
  CapPolicy p;
  if (text.empty()) {
    p.kind = fallback;
  } else if (text == "auto") {
    p.kind = CapPolicy::kAuto;
  } else if (text == "all") {
    p.kind = CapPolicy::kAll;
  } else {
    p.kind = CapPolicy::kFixed;
    try {
      std::size_t used = 0;
      p.value = std::stoi(text, &used);
      if (used != text.size() || p.value < 1) throw std::invalid_argument(text);
    } catch (const std::exception&) {
      throw UsageError("--effort-cap must be auto, all or a positive integer");
    }
  }
  return p;
}

std::string CurveCsv(const std::vector<devsim::CampaignResult>& results) {
  std::string csv = "approach,bug,effort,effort_fraction,detection\n";
  for (const auto& r : results) {
    for (std::size_t e = 0; e < r.curve.size(); ++e) {
      csv += r.approach + "," + r.bug + "," + std::to_string(e + 1) + "," +
             FormatDouble(r.curve[e].first) + "," + FormatDouble(r.curve[e].second) + "\n";
    }
  }
  return csv;
}

int CmdSimulate(const Options& o, std::ostream& out) {
  const harness::KillMatrix matrix = harness::LoadKillMatrix(o.matrices.at(0));
  const CapPolicy cap = ParseCap(o.effort_cap, CapPolicy::kAll);
  if (cap.kind == CapPolicy::kAuto) {
    throw UsageError("--effort-cap auto needs at least two approaches (use compare)");
  }
  const int effort_cap =
      cap.kind == CapPolicy::kFixed ? cap.value : devsim::UncappedEffort(matrix);
  const auto result = devsim::RunCampaign(matrix, o.repetitions, effort_cap, o.seed, o.jobs);

  const fs::path dir = PrepareOut(o.out);
  WriteFile(Join(dir, "campaign.json"), devsim::ToJson(result).dump(2) + "\n");
  WriteFile(Join(dir, "curve.csv"), CurveCsv({result}));
  out << "detection ratio: " << FormatDouble(result.detection_ratio) << "\n";
  out << "mean first-reveal effort: "
      << (result.mean_first_reveal ? FormatDouble(*result.mean_first_reveal)
                                   : std::string("n/a"))
      << "\n";
  out << "effort cap: " << result.effort_cap << "\n";
  return kExitOk;
}

std::string BugLabel(const harness::KillMatrix& m, const std::string& path) {
  if (!m.bug.empty()) return m.bug;
  const fs::path p(path);
  const std::string parent = p.parent_path().filename().string();
  return parent.empty() ? p.stem().string() : parent;
}

int CmdCompare(const Options& o, std::ostream& out) {
  const CapPolicy cap = ParseCap(o.effort_cap, CapPolicy::kAuto);
  // bug -> approach -> matrix
  std::map<std::string, std::map<std::string, harness::KillMatrix>> by_bug;
  std::set<std::string> approaches;
  for (const auto& path : o.matrices) {
    harness::KillMatrix m = harness::LoadKillMatrix(path);
    m.bug = BugLabel(m, path);
    approaches.insert(m.approach);
    auto& slot = by_bug[m.bug];
    if (slot.count(m.approach) != 0) {
      throw SchemaError("$.approach", "two matrices for bug " + m.bug + " and approach " +
                                          m.approach + " (" + path + ")");
    }
    const std::string bug = m.bug;
    const std::string approach = m.approach;
    slot.emplace(approach, std::move(m));
  }
  if (approaches.size() < 2) throw UsageError("compare needs at least two approaches");
  for (const auto& [bug, per] : by_bug) {
    if (per.size() != approaches.size()) {
      throw UniverseMismatch("bug " + bug + " is not covered by every approach");
    }
  }

  std::vector<devsim::CampaignResult> campaigns;
  std::map<std::string, std::map<std::string, double>> ratios;
  ordered_json caps = ordered_json::object();
  for (const auto& [bug, per] : by_bug) {
    int common = 0;
    if (cap.kind == CapPolicy::kAuto) {
      std::vector<const harness::KillMatrix*> ms;
      for (const auto& [_, m] : per) ms.push_back(&m);
      common = devsim::CommonEffortCap(ms, o.repetitions, o.seed, o.jobs);
    } else if (cap.kind == CapPolicy::kFixed) {
      common = cap.value;
    }
    if (common > 0) caps[bug] = common;
    for (const auto& [approach, m] : per) {
      const int c = common > 0 ? common : devsim::UncappedEffort(m);
      campaigns.push_back(devsim::RunCampaign(m, o.repetitions, c, o.seed, o.jobs));
      ratios[approach][bug] = campaigns.back().detection_ratio;
    }
  }

  ordered_json pairs = ordered_json::array();
  std::string table = "approach pair                   p_value      a12  n_effective\n";
  for (const auto& a : approaches) {
    for (const auto& b : approaches) {
      if (a == b) continue;
      stats::PairedSample s;
      for (const auto& [bug, _] : by_bug) {
        s.labels.push_back(bug);
        s.x.push_back(ratios[a][bug]);
        s.y.push_back(ratios[b][bug]);
      }
      const auto summary = stats::Summarize(s);
      ordered_json j;
      j["x"] = a;
      j["y"] = b;
      j["p_value"] = summary.p_value;
      j["a12"] = summary.a12;
      j["n_effective"] = summary.n_effective;
      pairs.push_back(std::move(j));
      char line[160];
      std::snprintf(line, sizeof line, "%-30s %9.4g %8.4f %12d\n", (a + " > " + b).c_str(),
                    summary.p_value, summary.a12, summary.n_effective);
      table += line;
    }
  }

  ordered_json mean_curves = ordered_json::object();
  for (const auto& a : approaches) {
    ordered_json curve = ordered_json::array();
    for (int i = 0; i <= 100; ++i) {
      const double f = i / 100.0;
      double sum = 0.0;
      int n = 0;
      for (const auto& c : campaigns) {
        if (c.approach != a) continue;
        sum += c.DetectionAt(f);
        ++n;
      }
      curve.push_back({f, n > 0 ? sum / n : 0.0});
    }
    mean_curves[a] = std::move(curve);
  }

  ordered_json doc;
  doc["repetitions"] = o.repetitions;
  doc["seed"] = o.seed;
  doc["effort_caps"] = caps;
  doc["campaigns"] = ordered_json::array();
  for (const auto& c : campaigns) doc["campaigns"].push_back(devsim::ToJson(c));
  doc["pairs"] = pairs;
  doc["overlap"] = {stats::ToJson(stats::DetectionOverlap(ratios, stats::Threshold::kAboveZero)),
                    stats::ToJson(stats::DetectionOverlap(ratios, stats::Threshold::kAtLeastNinety))};
  doc["mean_curves"] = mean_curves;

  std::string summary = "bug                  approach             cap  detection\n";
  for (const auto& c : campaigns) {
    char line[160];
    std::snprintf(line, sizeof line, "%-20s %-20s %4d %10.4f\n", c.bug.c_str(),
                  c.approach.c_str(), c.effort_cap, c.detection_ratio);
    summary += line;
  }
  for (const auto& a : approaches) {
    double sum = 0.0;
    for (const auto& [_, r] : ratios[a]) sum += r;
    char line[160];
    std::snprintf(line, sizeof line, "mean detection %-20s %10.4f\n", a.c_str(),
                  sum / static_cast<double>(ratios[a].size()));
    summary += line;
  }
  const std::string report = summary + "\n" + table;

  const fs::path dir = PrepareOut(o.out);
  WriteFile(Join(dir, "comparison.json"), doc.dump(2) + "\n");
  WriteFile(Join(dir, "comparison.txt"), report);
  WriteFile(Join(dir, "curves.csv"), CurveCsv(campaigns));
  out << report;
  return kExitOk;
}

int Guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const RemoteUnavailable& e) {
    err << "predictor unavailable: " << e.what() << "\n";
    return kExitPredictor;
  } catch (const ProtocolError& e) {
    err << "predictor protocol error: " << e.what() << "\n";
    return kExitPredictor;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

}  // namespace

int Run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Natural mutant generation and fault-detection simulation for MiniJ",
               "mutalm"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub, bool with_seed) {
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    if (with_seed) sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
  };

  CLI::App* mutate = app.add_subcommand("mutate", "Generate mutants for a .mj program");
  mutate->add_option("program", o.program, "MiniJ source file")->required();
  mutate->add_option("--quota", o.quota, "Maximum number of mutants")
      ->check(CLI::PositiveNumber);
  mutate->add_option("--k", o.k, "Predictions per masked token")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  mutate->add_option("--predictor-url", o.predictor_url, "Fill-mask service endpoint");
  mutate->add_option("--predictor-mode", o.predictor_mode, "remote or stub")
      ->check(CLI::IsMember({"remote", "stub"}))
      ->capture_default_str();
  mutate->add_flag("--conventional", o.conventional, "First-order mutants only");
  common(mutate, true);

  CLI::App* execute = app.add_subcommand("execute", "Run a mutant set against a test suite");
  execute->add_option("mutants", o.mutant_set, "Mutant-set JSON")->required();
  execute->add_option("--suite", o.suite, "Test-suite JSON")->required();
  execute->add_option("--buggy", o.buggy, "Buggy program version");
  execute->add_option("--program", o.program_override, "Original program (overrides the set)");
  execute->add_option("--approach", o.approach, "Approach label")->capture_default_str();
  execute->add_option("--bug-id", o.bug_id, "Bug label stored in the matrix");
  execute->add_option("--fuel", o.fuel, "Steps per test")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  common(execute, false);

  CLI::App* simulate = app.add_subcommand("simulate", "Developer simulation on one matrix");
  simulate->add_option("matrix", o.matrices, "Kill-matrix JSON")->required()->expected(1);
  simulate->add_option("--repetitions", o.repetitions, "Sessions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  simulate->add_option("--effort-cap", o.effort_cap, "auto, all or N (default all)");
  common(simulate, true);

  CLI::App* compare = app.add_subcommand("compare", "Compare approaches across bugs");
  compare->add_option("matrices", o.matrices, "Kill-matrix JSON files")->required();
  compare->add_option("--repetitions", o.repetitions, "Sessions per campaign")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  compare->add_option("--effort-cap", o.effort_cap, "auto, all or N (default auto)");
  common(compare, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  return Guarded(
      [&]() -> int {
        if (mutate->parsed()) return CmdMutate(o, out, err);
        if (execute->parsed()) return CmdExecute(o, out, err);
        if (simulate->parsed()) return CmdSimulate(o, out);
        return CmdCompare(o, out);
      },
      err);
}

}  // namespace mutalm::cli
