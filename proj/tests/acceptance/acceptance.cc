// Copyright 2026 The Chronomask Authors.
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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Every threshold is a named constant below.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "chronomask/analysis.h"
#include "chronomask/cli.h"
#include "chronomask/error.h"
#include "chronomask/experiment.h"
#include "chronomask/masking.h"
#include "chronomask/random.h"
#include "chronomask/significance.h"
#include "chronomask/synth.h"
#include "chronomask/wikidata.h"
#include "fixtures.h"

namespace chronomask {
namespace {

namespace t = chronomask::testing;

// Criterion 1.
constexpr int kLmiCorpora = 200;
constexpr std::size_t kLmiMaxDocs = 30;
constexpr std::size_t kLmiMaxTokens = 50;
constexpr double kLmiTolerance = 1e-12;
constexpr double kLmiSeconds = 10.0;
// Criterion 2.
constexpr double kMaskSeconds = 1.0;
// Criterion 3.
constexpr int kPropertyCorpora = 200;
// Criterion 4.
constexpr double kExactTolerance = 1e-15;
constexpr double kChiSquareTolerance = 1e-3;
constexpr double kBonferroniTolerance = 1e-12;
// Criteria 5 and 6.
constexpr std::uint64_t kSeeds[] = {1, 2, 3, 4, 5};
constexpr std::size_t kSynthDocs = 1000;
constexpr double kNoMaskCrossMax = 0.60;
constexpr double kWikiDCrossMin = 0.75;
constexpr double kWikiDGainMin = 0.15;
constexpr int kSignificantSeedsMin = 4;
constexpr double kAlpha = 0.05;
constexpr double kDiachronicSeconds = 120.0;
constexpr double kInDomainTolerance = 0.05;
// Criterion 9.
constexpr std::size_t kDumpEntities = 1000;
constexpr std::size_t kDumpMalformed = 7;
constexpr double kDumpSeconds = 5.0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int number, const std::string& name, const Outcome& o) {
  std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", number, name.c_str(),
              o.detail.c_str());
  std::fflush(stdout);
  failures += !o.pass;
}

// Runs a criterion, turning any exception into a failure.
void criterion(int number, const std::string& name, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  report(number, name, o);
}

std::string fmt(const char* format, double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), format, v);
  return buffer;
}

Outcome lmi_oracle() {
  Rng rng(20260101);
  const auto start = Clock::now();
  std::size_t pairs = 0;
  double worst = 0;
  for (int trial = 0; trial < kLmiCorpora; ++trial) {
    const Corpus c = t::random_corpus(rng, kLmiMaxDocs, kLmiMaxTokens);
    const std::size_t n = 1 + rng.below(3);
    std::uint64_t total = 0;
    const auto oracle = t::brute_force_lmi(c, n, 0, &total);
    if (total == 0) continue;
    LmiOptions options;
    options.n = n;
    options.min_count = 0;
    const LmiTable table = compute_lmi(c, options);
    if (table.entries.size() != oracle.size()) {
      return {false, "entry count differs in corpus " + std::to_string(trial)};
    }
    for (const LmiEntry& e : table.entries) {
      auto it = oracle.find({e.phrase, e.label});
      if (it == oracle.end()) return {false, "unexpected phrase '" + e.phrase + "'"};
      worst = std::max(worst, std::fabs(e.lmi - it->second.lmi));
      ++pairs;
    }
  }
  const double secs = seconds_since(start);
  return {worst <= kLmiTolerance && secs < kLmiSeconds,
          std::to_string(pairs) + " pairs, max |diff| " + fmt("%.3g", worst) + ", " +
              fmt("%.2f", secs) + " s"};
}

Outcome masking_fixture() {
  const auto start = Clock::now();
  const EntityIndex index = t::worked_example_index();
  const AnnotatedDocument d = t::worked_example_document();
  int exact = 0, rows = 0;
  std::string mismatch;
  for (const auto& [policy, expected] : t::worked_example_expected()) {
    ++rows;
    const std::string got = apply_mask(d, policy, &index).text;
    if (got == expected) {
      ++exact;
    } else {
      mismatch = std::string(policy_display_name(policy)) + " gave '" + got + "'";
    }
  }
  const double secs = seconds_since(start);
  return {exact == rows && rows == 6 && secs < kMaskSeconds,
          std::to_string(exact) + "/" + std::to_string(rows) + " rows exact, " +
              fmt("%.3f", secs) + " s" + (mismatch.empty() ? "" : "; " + mismatch)};
}

Outcome lmi_properties() {
  Rng rng(99);
  std::size_t checked = 0;
  for (int trial = 0; trial < kPropertyCorpora; ++trial) {
    const Corpus c = t::random_corpus(rng, kLmiMaxDocs, kLmiMaxTokens);
    LmiOptions options;
    options.n = 1 + rng.below(2);
    options.min_count = 0;
    const LmiTable natural = compute_lmi(c, options);
    for (const LmiEntry& e : natural.entries) {
      if ((e.lmi > 0) != (e.p_l_given_w > natural.label_probability(e.label))) {
        return {false, "sign mismatch for '" + e.phrase + "'"};
      }
      ++checked;
    }
    for (double base : {2.0, 10.0}) {
      options.log_base = base;
      const LmiTable other = compute_lmi(c, options);
      if (other.entries.size() != natural.entries.size()) return {false, "size changed with base"};
      for (std::size_t i = 0; i < other.entries.size(); ++i) {
        if (other.entries[i].phrase != natural.entries[i].phrase ||
            other.entries[i].label != natural.entries[i].label) {
          return {false, "ordering changed with log base " + fmt("%g", base)};
        }
      }
    }
  }
  return {true, std::to_string(checked) + " entries, ordering stable under bases 2 and 10"};
}

double chi_square_tail(double s) {
  // Simpson's rule on 2 * phi(t) over [0, sqrt(s)].
  const int n = 20000;
  const double h = std::sqrt(s) / n;
  double sum = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = i * h;
    sum += (i == 0 || i == n ? 1 : (i % 2 ? 4 : 2)) * std::exp(-x * x / 2);
  }
  return 1 - 2 * sum * h / 3 / std::sqrt(2 * std::numbers::pi);
}

Outcome mcnemar_values() {
  const McNemarResult a = mcnemar_from_counts(1, 9, 1);
  const McNemarResult z = mcnemar_from_counts(0, 0, 1);
  const McNemarResult c = mcnemar_from_counts(15, 40, 1);
  const double adjusted = bonferroni(0.03, 5);
  const bool ok = a.exact() && std::fabs(a.p_raw - 22.0 / 1024.0) <= kExactTolerance &&
                  z.p_raw == 1.0 && !c.exact() &&
                  std::fabs(*c.statistic - 576.0 / 55.0) <= 1e-12 &&
                  std::fabs(c.p_raw - chi_square_tail(576.0 / 55.0)) <= kChiSquareTolerance &&
                  std::fabs(adjusted - 0.15) <= kBonferroniTolerance;
  return {ok, "p(1,9)=" + fmt("%.5f", a.p_raw) + " p(0,0)=" + fmt("%g", z.p_raw) +
                  " stat(15,40)=" + fmt("%.6f", *c.statistic) + " p=" + fmt("%.5f", c.p_raw) +
                  " oracle=" + fmt("%.5f", chi_square_tail(576.0 / 55.0)) +
                  " bonferroni(0.03,5)=" + fmt("%.2f", adjusted)};
}

struct SeedRun {
  std::uint64_t seed = 0;
  MatrixReport report;
};

std::vector<SeedRun> diachronic_runs;
double diachronic_seconds = 0;

void run_diachronic() {
  const auto start = Clock::now();
  for (std::uint64_t seed : kSeeds) {
    const SynthData d = synth_diachronic_corpus(default_synth_config(seed, kSynthDocs));
    std::vector<DatasetInput> inputs = {
        {"period-a", d.annotations_a, std::make_shared<EntityIndex>(d.index_a)},
        {"period-b", d.annotations_b, std::make_shared<EntityIndex>(d.index_b)}};
    diachronic_runs.push_back({seed, run_matrix(inputs, MatrixConfig{})});
  }
  diachronic_seconds = seconds_since(start);
}

Outcome mitigation() {
  if (diachronic_runs.empty()) run_diachronic();
  bool ok = diachronic_seconds < kDiachronicSeconds;
  int significant = 0;
  std::string detail;
  for (const SeedRun& run : diachronic_runs) {
    const MatrixCell* base = run.report.find("period-a", "period-b", MaskPolicy::kNoMask);
    const MatrixCell* wikid = run.report.find("period-a", "period-b", MaskPolicy::kWikiD);
    const double b = base->eval.accuracy, w = wikid->eval.accuracy;
    const bool sig = w > b && wikid->vs_baseline->p_adjusted < kAlpha;
    significant += sig;
    ok = ok && b <= kNoMaskCrossMax && w >= kWikiDCrossMin && w - b >= kWikiDGainMin;
    detail += "seed " + std::to_string(run.seed) + " " + fmt("%.3f", b) + "->" + fmt("%.3f", w) +
              (sig ? "*" : "") + "; ";
  }
  ok = ok && significant >= kSignificantSeedsMin;
  return {ok, detail + std::to_string(significant) + "/5 significant, " +
                  fmt("%.1f", diachronic_seconds) + " s"};
}

Outcome in_domain() {
  if (diachronic_runs.empty()) run_diachronic();
  double worst = 0;
  std::string where;
  for (const SeedRun& run : diachronic_runs) {
    for (const std::string& ds : {std::string("period-a"), std::string("period-b")}) {
      const double base = run.report.find(ds, ds, MaskPolicy::kNoMask)->eval.accuracy;
      for (MaskPolicy p : kAllPolicies) {
        const double gap = std::fabs(run.report.find(ds, ds, p)->eval.accuracy - base);
        if (gap > worst) {
          worst = gap;
          where = "seed " + std::to_string(run.seed) + " " + ds + " " +
                  std::string(policy_id(p));
        }
      }
    }
  }
  return {worst <= kInDomainTolerance,
          "max |policy - nomask| in-period gap " + fmt("%.3f", worst) +
              (where.empty() ? "" : " (" + where + ")") + " over 5 seeds x 2 periods"};
}

Outcome coverage() {
  const std::set<std::string> a = {"Q1", "Q2", "Q3", "Q4"};
  const bool rates = coverage_rate(a, a) == 100.0 && coverage_rate(a, {"Q2", "Q4", "Q9"}) == 50.0;
  const EntityIndex index = t::worked_example_index();
  const auto top = top_labels({{"Q11696", 3}, {"Q30185", 1}}, &index, 2);
  const bool ranked = top == std::vector<LabelCount>{{"Q11696", "President of the United States", 3},
                                                     {"Q30185", "Q30185", 1}};
  const auto ties = top_labels({{"Q20", 2}, {"Q3", 2}, {"Q100", 5}, {"Q7", 1}}, nullptr, 3);
  const bool tie_order = ties.size() == 3 && ties[0].qid == "Q100" && ties[1].qid == "Q3" &&
                         ties[2].qid == "Q20";
  const bool empty = top_labels({}, nullptr, 3).empty();
  return {rates && ranked && tie_order && empty,
          std::string("identity 100.0, 4-vs-3 50.0: ") + (rates ? "ok" : "wrong") +
              "; top_labels: " + (ranked && tie_order && empty ? "ok" : "wrong")};
}

Outcome determinism() {
  t::TempDir dir;
  const std::string d = dir.path().string();
  std::ostringstream out, err;
  if (dispatch({"--seed", "3", "synth", "--output-dir", d, "--n-docs", "300"}, out, err) != 0) {
    return {false, "synth failed: " + err.str()};
  }
  std::string reports[2][2];
  for (int i = 0; i < 2; ++i) {
    const std::string json = (dir / ("r" + std::to_string(i) + ".json")).string();
    const std::string text = (dir / ("r" + std::to_string(i) + ".txt")).string();
    if (dispatch({"experiment", "--config", (dir / "experiment.json").string(), "--json-out",
                  json, "--text-out", text, "--threads", i == 0 ? "1" : "4"},
                 out, err) != 0) {
      return {false, "experiment failed: " + err.str()};
    }
    reports[i][0] = t::read_file(json);
    reports[i][1] = t::read_file(text);
  }
  const bool same = reports[0][0] == reports[1][0] && reports[0][1] == reports[1][1] &&
                    !reports[0][0].empty();
  return {same, "JSON " + std::to_string(reports[0][0].size()) + " bytes, text " +
                    std::to_string(reports[0][1].size()) + " bytes, " +
                    (same ? "identical" : "different")};
}

Outcome dump_indexing() {
  const std::string dump = t::generated_dump(kDumpEntities, kDumpMalformed);
  const auto start = Clock::now();
  std::istringstream in(dump);
  DumpOptions options;
  options.snapshot_date = *parse_date("2020-12-28");
  const DumpResult result = index_dump(in, options);
  const double secs = seconds_since(start);

  std::size_t checked = 0;
  for (std::size_t i = 0; i < kDumpEntities; ++i) {
    const std::string qid = "Q" + std::to_string(5000000 + i);
    const std::string name = "Given" + std::to_string(i) + " Family" + std::to_string(i);
    const std::string alias = "G" + std::to_string(i) + " Family" + std::to_string(i);
    const std::vector<std::string> want =
        i % 10 != 0 ? std::vector<std::string>{qid} : std::vector<std::string>{};
    if (lookup_by_name(result.index, name) != want || lookup_by_name(result.index, alias) != want) {
      return {false, "lookup mismatch for " + name};
    }
    if (i % 10 != 0) {
      const ResolvedLabel r = resolve_person_label(result.index, name);
      if (r.token != "Q" + std::to_string(900 + i % 7) || r.source != LabelSource::kP39) {
        return {false, "resolution mismatch for " + name + ": " + r.token};
      }
    }
    ++checked;
  }
  const std::size_t humans = kDumpEntities - kDumpEntities / 10;
  bool strict_failed = false;
  try {
    std::istringstream again(dump);
    options.strict = true;
    index_dump(again, options);
  } catch (const Error&) {
    strict_failed = true;
  }
  const bool ok = secs < kDumpSeconds && result.index.size() == humans &&
                  result.stats.malformed == kDumpMalformed && strict_failed;
  return {ok, std::to_string(result.index.size()) + " retained of " +
                  std::to_string(kDumpEntities) + ", " + std::to_string(checked) +
                  " lookups ok, " + std::to_string(result.stats.malformed) + " malformed, strict " +
                  (strict_failed ? "fails" : "passes") + ", " + fmt("%.3f", secs) + " s"};
}

}  // namespace
}  // namespace chronomask

int main() {
  using namespace chronomask;
  criterion(1, "LMI oracle equivalence", lmi_oracle);
  criterion(2, "masking fixture exactness", masking_fixture);
  criterion(3, "LMI sign and ranking properties", lmi_properties);
  criterion(4, "McNemar correctness", mcnemar_values);
  criterion(5, "diachronic-bias mitigation", mitigation);
  criterion(6, "in-domain non-degradation", in_domain);
  criterion(7, "coverage statistics", coverage);
  criterion(8, "experiment determinism", determinism);
  criterion(9, "dump indexing at small scale", dump_indexing);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
