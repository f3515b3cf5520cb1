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

#include "mutalm/factory.h"

#include <filesystem>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "mutalm/errors.h"
#include "mutalm/lang/parser.h"
#include "mutalm/lang/printer.h"
#include "mutalm/lang/validator.h"
#include "mutalm/seeder.h"
#include "mutalm/util.h"

namespace mutalm::factory {

using predictor::Prediction;
using targets::MaskedSequence;

const char* OrderName(MutantOrder order) {
  return order == MutantOrder::kFirst ? "first" : "second";
}

std::uint64_t NormalizedKey(const std::string& source) {
  Fnv1a h;
  for (const auto& tok : lang::Tokenize(source)) h.Add(tok.lexeme).Separator();
  return h.value();
}

Candidate Substitute(const lang::SourceUnit& unit, const MaskedSequence& seq,
                     const Prediction& p) {
  const lang::Span& span = seq.origin.span;
  if (span.end() > unit.source.size()) {
    throw TargetStale("masked span lies outside the program text");
  }
  std::string text = unit.source;
  text.replace(span.offset, span.length, p.token_text);
  lang::SourceUnit parsed;
  try {
    parsed = lang::Parse(text);
  } catch (const LexError& e) {
    throw SpliceUnparseable(e.what());
  } catch (const ParseError& e) {
    throw SpliceUnparseable(e.what());
  }
  Candidate c;
  c.valid = lang::Validate(parsed).ok;
  Mutant& m = c.mutant;
  m.line = seq.origin.line;
  m.node_kind = seq.origin.kind;
  m.category = targets::NodeKindName(seq.origin.kind);
  m.original_lexeme = seq.original_lexeme;
  m.replacement_lexeme = p.token_text;
  m.rank = p.rank;
  m.rendered_source = lang::Render(parsed);
  m.normalized_key = NormalizedKey(m.rendered_source);
  return c;
}

std::vector<Mutant> SelectionOrder(std::vector<Mutant> mutants, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Mutant> out;
  out.reserve(mutants.size());
  for (MutantOrder order : {MutantOrder::kFirst, MutantOrder::kSecond}) {
    std::vector<std::size_t> members;
    std::vector<long> lines;
    for (std::size_t i = 0; i < mutants.size(); ++i) {
      if (mutants[i].order != order) continue;
      members.push_back(i);
      lines.push_back(mutants[i].line);
    }
    for (std::size_t pos : RoundRobinOrder(lines, rng)) {
      out.push_back(std::move(mutants[members[pos]]));
    }
  }
  return out;
}

namespace {

enum class Fate { kExact, kNonCompilable, kCandidate };

struct Job {
  const lang::SourceUnit* unit = nullptr;
  MaskedSequence seq;
  MutantOrder order = MutantOrder::kFirst;
  std::string seeded_condition;
  std::string scheme;
};

struct JobResult {
  bool failed = false;
  std::vector<Fate> fates;
  std::vector<Mutant> mutants;  // one per kCandidate fate, in order
};

JobResult RunJob(const Job& job, predictor::Predictor& predictor,
                 const predictor::PredictorConfig& cfg) {
  JobResult r;
  const auto preds = predictor::PredictWithRetry(predictor, job.seq, cfg);
  if (!preds) {
    r.failed = true;
    return r;
  }
  for (const auto& p : *preds) {
    if (p.token_text == job.seq.original_lexeme) {
      r.fates.push_back(Fate::kExact);
      continue;
    }
    Candidate c;
    try {
      c = Substitute(*job.unit, job.seq, p);
    } catch (const SpliceUnparseable&) {
      r.fates.push_back(Fate::kNonCompilable);
      continue;
    }
    if (!c.valid) {
      r.fates.push_back(Fate::kNonCompilable);
      continue;
    }
    c.mutant.order = job.order;
    if (job.order == MutantOrder::kSecond) {
      c.mutant.seeded_condition = job.seeded_condition;
      c.mutant.category = job.scheme;
    }
    r.fates.push_back(Fate::kCandidate);
    r.mutants.push_back(std::move(c.mutant));
  }
  return r;
}

OrderStats& StatsFor(GenerationStats& stats, MutantOrder order) {
  return order == MutantOrder::kFirst ? stats.first : stats.second;
}

std::string BaseId(const Mutant& m) {
  return std::to_string(m.line) + ":" + m.category + ":" + std::to_string(m.rank) + ":" +
         Hash8(m.replacement_lexeme);
}

}  // namespace

MutantSet Generate(const lang::SourceUnit& unit, predictor::Predictor& predictor,
                   const GenerateOptions& options) {
  const predictor::PredictorConfig cfg = predictor::Resolve(options.predictor);
  const auto first_targets = targets::CollectTargets(unit);
  if (first_targets.empty()) throw EmptyUnit("the program has no mutation targets");

  MutantSet set;
  set.program_id = options.program_id;
  set.seed = options.seed;

  std::vector<Job> jobs;
  for (const auto& t : first_targets) {
    jobs.push_back(Job{&unit, targets::MaskTarget(unit, t), MutantOrder::kFirst, {}, {}});
  }
  seeder::SeedingResult seeding;
  if (!options.first_order_only) {
    seeding = seeder::SeedUnit(unit);
    set.stats.seeded_enumerated = seeding.enumerated;
    set.stats.seeded_invalid = seeding.invalid;
    for (std::size_t i = 0; i < seeding.programs.size(); ++i) {
      const auto& program = seeding.programs[i];
      const std::string rendered = program.condition.Render();
      for (const auto& site : program.mask_sites) {
        Job job{&program.unit, targets::MaskTarget(program.unit, site),
                MutantOrder::kSecond, rendered,
                seeder::SchemeName(program.condition.scheme)};
        job.seq.seeded_index = static_cast<int>(i);
        jobs.push_back(std::move(job));
      }
    }
  }

  std::vector<JobResult> results(jobs.size());
  ParallelFor(jobs.size(), std::max(1u, options.jobs), [&](std::size_t i) {
    results[i] = RunJob(jobs[i], predictor, cfg);
  });

  const std::uint64_t original_key = NormalizedKey(unit.source);
  std::unordered_set<std::uint64_t> seen{original_key};
  std::vector<Mutant> kept;
  int failed = 0;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    OrderStats& stats = StatsFor(set.stats, jobs[i].order);
    ++stats.targets;
    JobResult& r = results[i];
    if (r.failed) {
      ++stats.prediction_failed;
      ++failed;
      continue;
    }
    std::size_t next = 0;
    for (Fate fate : r.fates) {
      ++stats.predicted;
      if (fate == Fate::kExact) {
        ++stats.exact_match;
      } else if (fate == Fate::kNonCompilable) {
        ++stats.non_compilable;
      } else {
        Mutant& m = r.mutants[next++];
        if (!seen.insert(m.normalized_key).second) {
          ++stats.duplicate;
        } else {
          kept.push_back(std::move(m));
        }
      }
    }
  }
  if (!jobs.empty() && failed == static_cast<int>(jobs.size())) {
    throw RemoteUnavailable("every prediction request failed");
  }

  std::map<std::string, int> id_uses;
  for (auto& m : kept) {
    const std::string base = BaseId(m);
    const int use = ++id_uses[base];
    m.id = use == 1 ? base : base + "#" + std::to_string(use);
  }

  set.mutants = SelectionOrder(std::move(kept), options.seed);
  if (options.quota && set.mutants.size() > static_cast<std::size_t>(*options.quota)) {
    for (std::size_t i = static_cast<std::size_t>(*options.quota); i < set.mutants.size(); ++i) {
      ++StatsFor(set.stats, set.mutants[i].order).truncated;
    }
    set.mutants.resize(static_cast<std::size_t>(*options.quota));
  }
  for (const auto& m : set.mutants) ++StatsFor(set.stats, m.order).emitted;
  return set;
}

namespace {

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

std::string HunkRange(std::size_t prefix, std::size_t count) {
  const std::size_t start = count == 0 ? prefix : prefix + 1;
  return std::to_string(start) + "," + std::to_string(count);
}

}  // namespace

std::string UnifiedDiff(const std::string& before, const std::string& after,
                        const std::string& label) {
  if (before == after) return "";
  const auto a = SplitLines(before);
  const auto b = SplitLines(after);
  std::size_t prefix = 0;
  while (prefix < a.size() && prefix < b.size() && a[prefix] == b[prefix]) ++prefix;
  std::size_t suffix = 0;
  while (suffix < a.size() - prefix && suffix < b.size() - prefix &&
         a[a.size() - 1 - suffix] == b[b.size() - 1 - suffix]) {
    ++suffix;
  }
  const std::size_t removed = a.size() - prefix - suffix;
  const std::size_t added = b.size() - prefix - suffix;
  std::string out = "--- a/" + label + "\n+++ b/" + label + "\n";
  out += "@@ -" + HunkRange(prefix, removed) + " +" + HunkRange(prefix, added) + " @@\n";
  for (std::size_t i = 0; i < removed; ++i) out += "-" + a[prefix + i] + "\n";
  for (std::size_t i = 0; i < added; ++i) out += "+" + b[prefix + i] + "\n";
  return out;
}

std::string ApplyDiff(const std::string& before, const std::string& diff) {
  const auto original = SplitLines(before);
  const auto lines = SplitLines(diff);
  std::vector<std::string> out;
  std::size_t cursor = 0;
  std::size_t i = 0;
  while (i < lines.size()) {
    const std::string& line = lines[i];
    if (line.rfind("--- ", 0) == 0 || line.rfind("+++ ", 0) == 0) {
      ++i;
      continue;
    }
    unsigned long old_start = 0, old_count = 0, new_start = 0, new_count = 0;
    if (std::sscanf(line.c_str(), "@@ -%lu,%lu +%lu,%lu @@", &old_start, &old_count,
                    &new_start, &new_count) != 4) {
      throw Error("malformed hunk header: " + line);
    }
    const std::size_t at = old_count == 0 ? old_start : old_start - 1;
    if (at < cursor || at + old_count > original.size()) throw Error("hunk out of range");
    out.insert(out.end(), original.begin() + static_cast<std::ptrdiff_t>(cursor),
               original.begin() + static_cast<std::ptrdiff_t>(at));
    ++i;
    for (std::size_t k = 0; k < old_count; ++k, ++i) {
      if (i >= lines.size() || lines[i].empty() || lines[i][0] != '-' ||
          lines[i].substr(1) != original[at + k]) {
        throw Error("diff does not match the program at line " + std::to_string(at + k + 1));
      }
    }
    for (std::size_t k = 0; k < new_count; ++k, ++i) {
      if (i >= lines.size() || lines[i].empty() || lines[i][0] != '+') {
        throw Error("hunk is shorter than its header says");
      }
      out.push_back(lines[i].substr(1));
    }
    cursor = at + old_count;
  }
  out.insert(out.end(), original.begin() + static_cast<std::ptrdiff_t>(cursor), original.end());
  std::string text;
  for (const auto& l : out) text += l + "\n";
  return text;
}

nlohmann::ordered_json ToJson(const MutantSet& set, const std::string& original) {
  using nlohmann::ordered_json;
  const std::string label = std::filesystem::path(set.program_id).filename().string();
  ordered_json mutants = ordered_json::array();
  for (const auto& m : set.mutants) {
    ordered_json j;
    j["id"] = m.id;
    j["order"] = OrderName(m.order);
    j["line"] = m.line;
    j["kind"] = m.category;
    j["original"] = m.original_lexeme;
    j["replacement"] = m.replacement_lexeme;
    j["rank"] = m.rank;
    if (m.order == MutantOrder::kSecond) j["seeded"] = m.seeded_condition;
    j["diff"] = UnifiedDiff(original, m.rendered_source, label);
    mutants.push_back(std::move(j));
  }
  auto order_stats = [](const OrderStats& s) {
    ordered_json j;
    j["targets"] = s.targets;
    j["prediction_failed"] = s.prediction_failed;
    j["predicted"] = s.predicted;
    j["exact_match_discarded"] = s.exact_match;
    j["duplicate_discarded"] = s.duplicate;
    j["non_compilable_discarded"] = s.non_compilable;
    j["emitted"] = s.emitted;
    j["truncated"] = s.truncated;
    return j;
  };
  ordered_json stats;
  stats["first"] = order_stats(set.stats.first);
  stats["second"] = order_stats(set.stats.second);
  stats["seeded_conditions"] = set.stats.seeded_enumerated;
  stats["seeded_invalid"] = set.stats.seeded_invalid;
  ordered_json doc;
  doc["program"] = set.program_id;
  doc["seed"] = set.seed;
  doc["mutants"] = std::move(mutants);
  doc["stats"] = std::move(stats);
  return doc;
}

namespace {

const nlohmann::json& Require(const nlohmann::json& obj, const std::string& key,
                              const std::string& path) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(path + "." + key, "missing");
  return *it;
}

}  // namespace

LoadedMutantSet MutantSetFromJson(const nlohmann::json& doc, const std::string& original) {
  LoadedMutantSet set;
  const auto& program = Require(doc, "program", "$");
  if (!program.is_string()) throw SchemaError("$.program", "expected a string");
  set.program = program.get<std::string>();
  const auto& seed = Require(doc, "seed", "$");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw SchemaError("$.seed", "expected a non-negative integer");
  }
  set.seed = seed.get<std::uint64_t>();
  const auto& mutants = Require(doc, "mutants", "$");
  if (!mutants.is_array()) throw SchemaError("$.mutants", "expected an array");
  for (std::size_t i = 0; i < mutants.size(); ++i) {
    const std::string path = "$.mutants[" + std::to_string(i) + "]";
    const auto& m = mutants[i];
    LoadedMutant lm;
    const auto& id = Require(m, "id", path);
    if (!id.is_string()) throw SchemaError(path + ".id", "expected a string");
    lm.id = id.get<std::string>();
    const auto& order = Require(m, "order", path);
    if (order == "first") {
      lm.order = MutantOrder::kFirst;
    } else if (order == "second") {
      lm.order = MutantOrder::kSecond;
    } else {
      throw SchemaError(path + ".order", "expected \"first\" or \"second\"");
    }
    const auto& line = Require(m, "line", path);
    if (!line.is_number_integer()) throw SchemaError(path + ".line", "expected an integer");
    lm.line = line.get<int>();
    if (m.contains("kind")) {
      if (!m["kind"].is_string()) throw SchemaError(path + ".kind", "expected a string");
      lm.category = m["kind"].get<std::string>();
    }
    const auto& diff = Require(m, "diff", path);
    if (!diff.is_string()) throw SchemaError(path + ".diff", "expected a string");
    try {
      lm.source = ApplyDiff(original, diff.get<std::string>());
    } catch (const SchemaError&) {
      throw;
    } catch (const Error& e) {
      throw SchemaError(path + ".diff", e.what());
    }
    set.mutants.push_back(std::move(lm));
  }
  return set;
}

}  // namespace mutalm::factory
