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

#include "chronomask/experiment.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <set>

#include "chronomask/analysis.h"
#include "chronomask/error.h"
#include "chronomask/parallel.h"
#include "json.hpp"

namespace chronomask {

const MatrixCell* MatrixReport::find(const std::string& train_set,
                                     const std::string& test_set,
                                     MaskPolicy policy) const {
  for (const auto& cell : cells) {
    if (cell.train_set == train_set && cell.test_set == test_set &&
        cell.policy == policy) {
      return &cell;
    }
  }
  return nullptr;
}

namespace {

std::string context(const std::string& train, const std::string& test,
                    MaskPolicy policy) {
  return "train=" + train + " test=" + test + " policy=" +
         std::string(policy_id(policy)) + ": ";
}

}  // namespace

MatrixReport run_matrix(const std::vector<DatasetInput>& datasets,
                        const MatrixConfig& config) {
  if (datasets.empty()) throw UsageError("experiment needs at least one dataset");
  if (config.policies.empty()) throw UsageError("experiment needs at least one policy");
  config.space.validate();
  {
    std::set<std::string> names;
    for (const auto& d : datasets) {
      if (d.name.empty() || !names.insert(d.name).second) {
        throw UsageError("dataset names must be nonempty and unique ('" +
                         d.name + "')");
      }
    }
    std::set<MaskPolicy> seen;
    for (MaskPolicy p : config.policies) {
      if (!seen.insert(p).second) {
        throw UsageError("policy listed twice: " + std::string(policy_id(p)));
      }
      if (!requires_index(p)) continue;
      for (const auto& d : datasets) {
        if (!d.index) {
          throw UsageError("dataset '" + d.name + "' has no entity index but policy " +
                           std::string(policy_id(p)) + " needs one");
        }
      }
    }
  }

  const std::size_t n_data = datasets.size();
  const std::size_t n_pol = config.policies.size();
  const bool has_baseline =
      std::find(config.policies.begin(), config.policies.end(),
                MaskPolicy::kNoMask) != config.policies.end();

  // Mask every dataset under every policy, then split. Masking is
  // per-document, so the split partitions are the same for every policy.
  std::vector<MaskedCorpus> masked(n_data * n_pol);
  std::vector<SplitResult> splits(n_data * n_pol);
  parallel_for(n_data * n_pol, config.threads, [&](std::size_t job) {
    const DatasetInput& d = datasets[job / n_pol];
    const MaskPolicy p = config.policies[job % n_pol];
    try {
      masked[job] = mask_corpus(d.documents, p, d.index.get(),
                                config.resolve_mode, d.name, 1);
      splits[job] = split_corpus(masked[job].corpus, config.split);
    } catch (const Error& e) {
      throw Error("dataset=" + d.name + " policy=" + std::string(policy_id(p)) +
                  ": " + e.what());
    }
  });

  MatrixReport report;
  for (const auto& d : datasets) report.datasets.push_back(d.name);
  report.policies = config.policies;
  report.comparisons = static_cast<std::uint32_t>(has_baseline ? n_pol - 1 : 0);
  report.cells.resize(n_data * n_pol * n_data);

  // One job per (train dataset, policy): train once, evaluate everywhere.
  parallel_for(n_data * n_pol, config.threads, [&](std::size_t job) {
    const std::size_t d = job / n_pol;
    const MaskPolicy p = config.policies[job % n_pol];
    const std::string& train_name = datasets[d].name;
    std::optional<Model> model;
    try {
      model = train(splits[job].train, config.space, config.train);
    } catch (const Error& e) {
      throw Error(context(train_name, "-", p) + e.what());
    }
    for (std::size_t t = 0; t < n_data; ++t) {
      const std::size_t source = t * n_pol + job % n_pol;
      const Corpus& test = (t == d || config.ood_test == OodTest::kTestSplit)
                               ? splits[source].test
                               : masked[source].corpus;
      MatrixCell& cell = report.cells[job * n_data + t];
      cell.train_set = train_name;
      cell.test_set = datasets[t].name;
      cell.policy = p;
      cell.in_domain = t == d;
      try {
        cell.eval = evaluate(*model, test);
      } catch (const Error& e) {
        throw Error(context(train_name, datasets[t].name, p) + e.what());
      }
      cell.eval.train_set = train_name;
      cell.eval.test_set = datasets[t].name;
      cell.eval.policy = p;
    }
  });

  if (has_baseline && n_pol > 1) {
    const std::size_t base_pol = static_cast<std::size_t>(
        std::find(config.policies.begin(), config.policies.end(),
                  MaskPolicy::kNoMask) -
        config.policies.begin());
    for (std::size_t d = 0; d < n_data; ++d) {
      for (std::size_t pi = 0; pi < n_pol; ++pi) {
        if (pi == base_pol) continue;
        for (std::size_t t = 0; t < n_data; ++t) {
          MatrixCell& cell = report.cells[(d * n_pol + pi) * n_data + t];
          const MatrixCell& base = report.cells[(d * n_pol + base_pol) * n_data + t];
          try {
            cell.vs_baseline = mcnemar(base.eval, cell.eval, report.comparisons);
          } catch (const Error& e) {
            throw Error(context(cell.train_set, cell.test_set, cell.policy) +
                        e.what());
          }
        }
      }
    }
  }
  return report;
}

void write_report_json(const MatrixReport& report, const MatrixConfig& config,
                       std::ostream& out) {
  nlohmann::ordered_json j;
  j["datasets"] = report.datasets;
  j["policies"] = nlohmann::ordered_json::array();
  for (MaskPolicy p : report.policies) j["policies"].push_back(std::string(policy_id(p)));
  nlohmann::ordered_json split;
  if (config.split.mode == SplitSpec::Mode::kTimeBased) {
    split["mode"] = "time";
    split["boundary"] = format_date(*config.split.boundary_date);
  } else {
    split["mode"] = "random";
    split["train_fraction"] = config.split.train_fraction;
    split["seed"] = config.split.seed;
  }
  j["split"] = split;
  j["ood_test"] = config.ood_test == OodTest::kTestSplit ? "split" : "full";
  j["resolve_mode"] = std::string(resolve_mode_name(config.resolve_mode));
  j["bonferroni_m"] = report.comparisons;
  j["cells"] = nlohmann::ordered_json::array();
  for (const MatrixCell& cell : report.cells) {
    nlohmann::ordered_json c;
    c["train"] = cell.train_set;
    c["test"] = cell.test_set;
    c["policy"] = std::string(policy_id(cell.policy));
    c["in_domain"] = cell.in_domain;
    c["n"] = cell.eval.gold.size();
    c["correct"] = cell.eval.correct;
    c["accuracy"] = cell.eval.accuracy;
    if (cell.vs_baseline) {
      const McNemarResult& r = *cell.vs_baseline;
      nlohmann::ordered_json m;
      m["b"] = r.b;
      m["c"] = r.c;
      m["test"] = r.exact() ? "exact" : "chi-square";
      m["statistic"] = r.statistic ? nlohmann::ordered_json(*r.statistic)
                                   : nlohmann::ordered_json(nullptr);
      m["p_raw"] = r.p_raw;
      m["p_adjusted"] = r.p_adjusted;
      m["significant"] = r.p_adjusted < 0.05;
      c["mcnemar"] = m;
    }
    j["cells"].push_back(std::move(c));
  }
  out << j.dump(2) << '\n';
}

void write_report_text(const MatrixReport& report, std::ostream& out) {
  std::size_t train_w = 5, method_w = 6, col_w = 7;
  for (const auto& d : report.datasets) {
    train_w = std::max(train_w, d.size());
    col_w = std::max(col_w, d.size() + 1);
  }
  for (MaskPolicy p : report.policies) {
    method_w = std::max(method_w, policy_display_name(p).size());
  }
  out << "Accuracy by training set (rows) and test set (columns).";
  if (report.comparisons > 0) {
    out << " * = McNemar p < 0.05 vs No Mask after Bonferroni (m="
        << report.comparisons << ").";
  }
  out << "\n\n";
  out << std::left << std::setw(static_cast<int>(train_w)) << "Train" << "  "
      << std::setw(static_cast<int>(method_w)) << "Method";
  for (const auto& d : report.datasets) {
    out << "  " << std::right << std::setw(static_cast<int>(col_w)) << d;
  }
  out << '\n';
  for (const auto& train_name : report.datasets) {
    for (MaskPolicy p : report.policies) {
      out << std::left << std::setw(static_cast<int>(train_w)) << train_name
          << "  " << std::setw(static_cast<int>(method_w))
          << policy_display_name(p);
      for (const auto& test_name : report.datasets) {
        const MatrixCell* cell = report.find(train_name, test_name, p);
        std::string value = format_fixed(cell->eval.accuracy, 3);
        if (cell->vs_baseline && cell->vs_baseline->p_adjusted < 0.05) {
          value = "*" + value;
        }
        out << "  " << std::right << std::setw(static_cast<int>(col_w)) << value;
      }
      out << '\n';
    }
  }
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open experiment config " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path.string() + ": malformed JSON: " + e.what());
  }
  const std::filesystem::path base = path.parent_path();
  auto resolve = [&](const std::string& p) {
    std::filesystem::path candidate(p);
    return candidate.is_absolute() ? candidate : base / candidate;
  };

  ExperimentConfig config;
  try {
    for (const auto& d : j.at("datasets")) {
      DatasetSpec spec;
      spec.name = d.at("name").get<std::string>();
      spec.corpus = resolve(d.at("corpus").get<std::string>());
      if (d.contains("annotations")) {
        spec.annotations = resolve(d["annotations"].get<std::string>());
      }
      if (d.contains("index")) spec.index = resolve(d["index"].get<std::string>());
      config.datasets.push_back(std::move(spec));
    }
    MatrixConfig& m = config.matrix;
    if (j.contains("policies")) {
      m.policies.clear();
      for (const auto& p : j["policies"]) {
        auto policy = parse_policy(p.get<std::string>());
        if (!policy) throw UsageError("unknown policy '" + p.get<std::string>() + "'");
        m.policies.push_back(*policy);
      }
    }
    if (j.contains("split")) {
      const auto& s = j["split"];
      const std::string mode = s.value("mode", "random");
      if (mode == "random") {
        m.split = SplitSpec::random(s.value("train_fraction", 0.8),
                                    s.value("seed", std::uint64_t{42}));
      } else if (mode == "time") {
        m.split = SplitSpec::by_time(
            parse_date_or_throw(s.at("boundary").get<std::string>(), "split boundary"));
      } else {
        throw UsageError("unknown split mode '" + mode + "'");
      }
    }
    if (j.contains("ood_test")) {
      const std::string ood = j["ood_test"].get<std::string>();
      if (ood == "split") {
        m.ood_test = OodTest::kTestSplit;
      } else if (ood == "full") {
        m.ood_test = OodTest::kFullData;
      } else {
        throw UsageError("ood_test must be \"split\" or \"full\"");
      }
    }
    if (j.contains("resolve_mode")) {
      auto mode = parse_resolve_mode(j["resolve_mode"].get<std::string>());
      if (!mode) throw UsageError("resolve_mode must be dump-order or temporal");
      m.resolve_mode = *mode;
    }
    if (j.contains("features")) {
      const auto& f = j["features"];
      if (f.contains("orders")) m.space.orders = f["orders"].get<std::vector<std::size_t>>();
      if (f.contains("dimensions_log2")) {
        const auto bits = f["dimensions_log2"].get<unsigned>();
        if (bits < 1 || bits > 30) throw UsageError("dimensions_log2 must be in [1, 30]");
        m.space.dimensions = 1u << bits;
      }
      m.space.hash_seed = f.value("hash_seed", m.space.hash_seed);
    }
    if (j.contains("train")) {
      const auto& t = j["train"];
      m.train.epochs = t.value("epochs", m.train.epochs);
      m.train.learning_rate = t.value("learning_rate", m.train.learning_rate);
      m.train.l2 = t.value("l2", m.train.l2);
      m.train.seed = t.value("seed", m.train.seed);
    }
    m.threads = j.value("threads", 1u);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path.string() + ": invalid experiment config: " + e.what());
  } catch (const Error& e) {
    throw UsageError(path.string() + ": " + e.what());
  }
  if (config.datasets.empty()) {
    throw UsageError(path.string() + ": no datasets listed");
  }
  return config;
}

std::vector<DatasetInput> load_datasets(const ExperimentConfig& config) {
  std::vector<DatasetInput> inputs;
  for (const DatasetSpec& spec : config.datasets) {
    Corpus corpus = load_corpus(spec.corpus);
    DatasetInput input;
    input.name = spec.name;
    input.documents = spec.annotations
                          ? load_annotations(corpus, *spec.annotations).documents
                          : unannotated(corpus);
    if (spec.index) {
      input.index = std::make_shared<const EntityIndex>(EntityIndex::load(*spec.index));
    }
    inputs.push_back(std::move(input));
  }
  return inputs;
}

}  // namespace chronomask
