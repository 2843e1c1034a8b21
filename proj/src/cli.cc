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


#include "chronomask/cli.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "chronomask/analysis.h"
#include "chronomask/annotate.h"
#include "chronomask/classifier.h"
#include "chronomask/corpus.h"
#include "chronomask/error.h"
#include "chronomask/experiment.h"
#include "chronomask/masking.h"
#include "chronomask/synth.h"
#include "chronomask/wikidata.h"
#include "json.hpp"

namespace chronomask {

namespace {

namespace fs = std::filesystem;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  bool strict = false;
  bool verbose = false;
};

// Writes to `path`, or to `fallback` when the path is empty or "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : path_(path) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path, std::ios::binary);
      if (!file_) throw Error("cannot write " + path);
      stream_ = &file_;
    }
  }

  std::ostream& stream() { return *stream_; }

  void close() {
    stream_->flush();
    if (!*stream_) throw Error("write failed for " + (path_.empty() ? "output" : path_));
    if (file_.is_open()) file_.close();
  }

 private:
  std::string path_;
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

MaskPolicy policy_or_throw(const std::string& text) {
  auto policy = parse_policy(text);
  if (!policy) {
    throw UsageError("unknown policy '" + text +
                     "' (expected nomask, nedel, basicner, wikid, wikid-del or wikid-ner)");
  }
  return *policy;
}

ResolveMode resolve_mode_or_throw(const std::string& text) {
  auto mode = parse_resolve_mode(text);
  if (!mode) throw UsageError("--resolve-mode must be dump-order or temporal");
  return *mode;
}

FeatureSpace feature_space(const std::vector<std::size_t>& orders,
                           unsigned dimensions_log2, std::uint64_t hash_seed) {
  if (dimensions_log2 < 1 || dimensions_log2 > 30) {
    throw UsageError("--dimensions-log2 must be in [1, 30]");
  }
  FeatureSpace space;
  space.orders = orders;
  space.dimensions = 1u << dimensions_log2;
  space.hash_seed = hash_seed;
  space.validate();
  return space;
}

std::vector<AnnotatedDocument> documents_for(const Corpus& corpus,
                                             const std::string& annotations,
                                             std::ostream& err, bool verbose) {
  if (annotations.empty()) return unannotated(corpus);
  AnnotationSet set = load_annotations(corpus, annotations);
  if (verbose && set.discarded_overlaps > 0) {
    err << annotations << ": discarded " << set.discarded_overlaps
        << " overlapping spans\n";
  }
  return std::move(set.documents);
}

void add_ingest(CLI::App& app, const Globals& g, std::ostream& out,
                std::ostream& err, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("ingest", "Validate a corpus and write it in canonical form");
  auto input = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  auto allow_empty = std::make_shared<bool>(false);
  cmd->add_option("--input", *input, "Corpus JSONL file")->required();
  cmd->add_option("--output", *output, "Canonical corpus file (default stdout)");
  cmd->add_flag("--allow-empty-text", *allow_empty, "Accept documents with empty text");
  cmd->callback([=, &g, &out, &err, &run] {
    run = [=, &g, &out, &err] {
      LoadOptions options;
      options.allow_empty_text = *allow_empty;
      const Corpus corpus = load_corpus(*input, CorpusFormat::kJsonLines, options);
      Output o(*output, out);
      write_corpus(corpus, o.stream());
      o.close();
      if (g.verbose) {
        std::size_t fake = 0;
        for (const Document& d : corpus) fake += d.label == Label::kFake;
        err << corpus.name() << ": " << corpus.size() << " documents, "
            << corpus.size() - fake << " real, " << fake << " fake\n";
      }
    };
  });
}

void add_lmi(CLI::App& app, const Globals& g, std::ostream& out,
             std::function<void()>& run) {
  auto* cmd = app.add_subcommand("lmi", "Rank n-grams by local mutual information per label");
  struct Args {
    std::string corpus, output, format = "tsv";
    std::size_t n = 2, top = 10;
    std::uint64_t min_count = 5;
    double scale = 1e6, log_base = 0;
    int decimals = 0;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--corpus", a->corpus, "Corpus JSONL file")->required();
  cmd->add_option("--n", a->n, "N-gram order")->capture_default_str();
  cmd->add_option("--top", a->top, "Rows per label")->capture_default_str();
  cmd->add_option("--min-count", a->min_count, "Minimum phrase count")->capture_default_str();
  cmd->add_option("--scale", a->scale, "Multiplier applied to LMI")->capture_default_str();
  cmd->add_option("--decimals", a->decimals, "Decimals of scaled LMI")->capture_default_str();
  cmd->add_option("--log-base", a->log_base, "Logarithm base (0 = natural)");
  cmd->add_option("--format", a->format, "tsv or text")->capture_default_str();
  cmd->add_option("--output", a->output, "Report file (default stdout)");
  cmd->callback([=, &g, &out, &run] {
    if (a->n == 0) throw UsageError("--n must be positive");
    if (a->top == 0) throw UsageError("--top must be positive");
    if (a->format != "tsv" && a->format != "text") {
      throw UsageError("--format must be tsv or text");
    }
    if (a->decimals < 0 || a->decimals > 12) throw UsageError("--decimals must be in [0, 12]");
    if (a->log_base != 0 && (a->log_base <= 0 || a->log_base == 1)) {
      throw UsageError("--log-base must be positive and not 1");
    }
    run = [=, &g, &out] {
      const Corpus corpus = load_corpus(a->corpus);
      LmiOptions options;
      options.n = a->n;
      options.min_count = a->min_count;
      options.log_base = a->log_base;
      options.threads = g.threads.value_or(1);
      const LmiTable table = compute_lmi(corpus, options);
      LmiExportOptions export_options{a->top, a->scale, a->decimals};
      Output o(a->output, out);
      if (a->format == "tsv") {
        export_lmi_tsv(table, export_options, o.stream());
      } else {
        export_lmi_text(table, export_options, o.stream());
      }
      o.close();
    };
  });
}

void add_tag(CLI::App& app, std::ostream& out, std::ostream& err, const Globals& g,
             std::function<void()>& run) {
  auto* cmd = app.add_subcommand("tag", "Annotate named entities with a gazetteer");
  auto corpus = std::make_shared<std::string>();
  auto gazetteer = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  cmd->add_option("--corpus", *corpus, "Corpus JSONL file")->required();
  cmd->add_option("--gazetteer", *gazetteer, "name<TAB>TAG file")->required();
  cmd->add_option("--output", *output, "Annotation JSONL file (default stdout)");
  cmd->callback([=, &out, &err, &g, &run] {
    run = [=, &out, &err, &g] {
      const Corpus c = load_corpus(*corpus);
      const Gazetteer gz = Gazetteer::load(*gazetteer);
      std::vector<AnnotatedDocument> docs;
      std::size_t spans = 0;
      for (const Document& d : c) {
        docs.push_back(tag_with_gazetteer(d, gz));
        spans += docs.back().spans.size();
      }
      Output o(*output, out);
      write_annotations(docs, o.stream());
      o.close();
      if (g.verbose) err << c.name() << ": " << spans << " spans\n";
    };
  });
}

void add_index(CLI::App& app, const Globals& g, std::ostream& err,
               std::function<void()>& run) {
  auto* cmd = app.add_subcommand("index-wikidata",
                                 "Build an entity index from a Wikidata JSON dump");
  struct Args {
    std::string dump, output, snapshot, language = "en";
    bool all_entities = false, no_value_labels = false;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--dump", a->dump, "Dump file, plain or gzip ('-' for stdin)")->required();
  cmd->add_option("--snapshot-date", a->snapshot, "Snapshot date YYYY-MM-DD")->required();
  cmd->add_option("--output", a->output, "Index file")->required();
  cmd->add_option("--language", a->language, "Label language")->capture_default_str();
  cmd->add_flag("--all-entities", a->all_entities, "Keep entities that are not humans");
  cmd->add_flag("--no-value-labels", a->no_value_labels,
                "Skip labels of P39/P106 values to save memory");
  cmd->callback([=, &g, &err, &run] {
    DumpOptions options;
    try {
      options.snapshot_date = parse_date_or_throw(a->snapshot, "--snapshot-date");
    } catch (const Error& e) {
      throw UsageError(e.what());
    }
    options.persons_only = !a->all_entities;
    options.collect_value_labels = !a->no_value_labels;
    options.language = a->language;
    run = [=, &g, &err]() mutable {
      options.strict = g.strict;
      options.threads = g.threads.value_or(1);
      const DumpResult result = index_dump_file(a->dump, options);
      result.index.save(fs::path(a->output));
      const DumpStats& s = result.stats;
      if (result.index.empty()) err << "warning: no entities retained from " << a->dump << "\n";
      if (g.verbose || s.malformed > 0) {
        err << a->dump << ": " << s.lines << " lines, " << s.entities << " entities, "
            << s.retained << " retained, " << s.malformed << " malformed, "
            << s.duplicates << " duplicates, " << s.invalid_statements
            << " invalid statements\n";
      }
    };
  });
}

void add_mask(CLI::App& app, const Globals& g, std::ostream& out,
              std::ostream& err, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("mask", "Apply a masking policy to an annotated corpus");
  struct Args {
    std::string corpus, annotations, policy, index, resolve_mode = "dump-order";
    std::string output, usage, name;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--corpus", a->corpus, "Corpus JSONL file")->required();
  cmd->add_option("--annotations", a->annotations, "Annotation JSONL file");
  cmd->add_option("--policy", a->policy,
                  "nomask, nedel, basicner, wikid, wikid-del or wikid-ner")->required();
  cmd->add_option("--index", a->index, "Entity index (WikiD policies)");
  cmd->add_option("--resolve-mode", a->resolve_mode, "dump-order or temporal")
      ->capture_default_str();
  cmd->add_option("--output", a->output, "Masked corpus (default stdout)");
  cmd->add_option("--usage", a->usage, "Replacement-token usage TSV");
  cmd->callback([=, &g, &out, &err, &run] {
    const MaskPolicy policy = policy_or_throw(a->policy);
    const ResolveMode mode = resolve_mode_or_throw(a->resolve_mode);
    if (requires_index(policy) && a->index.empty()) {
      throw UsageError("policy " + std::string(policy_id(policy)) +
                       " requires --index");
    }
    run = [=, &g, &out, &err] {
      const Corpus corpus = load_corpus(a->corpus);
      const auto docs = documents_for(corpus, a->annotations, err, g.verbose);
      std::optional<EntityIndex> index;
      if (!a->index.empty()) index = EntityIndex::load(fs::path(a->index));
      const MaskedCorpus masked =
          mask_corpus(docs, policy, index ? &*index : nullptr, mode, corpus.name(),
                      g.threads.value_or(1));
      Output o(a->output, out);
      write_corpus(masked.corpus, o.stream());
      o.close();
      if (!a->usage.empty()) {
        Output u(a->usage, out);
        write_usage(masked.usage, u.stream());
        u.close();
      }
    };
  });
}

void add_split(CLI::App& app, const Globals& g, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("split", "Split a corpus into train and test parts");
  struct Args {
    std::string corpus, train_out, test_out, mode = "random", boundary;
    double train_fraction = 0.8;
  };
  auto a = std::make_shared<Args>();
  cmd->add_option("--corpus", a->corpus, "Corpus JSONL file")->required();
  cmd->add_option("--train-out", a->train_out, "Training part")->required();
  cmd->add_option("--test-out", a->test_out, "Test part")->required();
  cmd->add_option("--mode", a->mode, "random or time")->capture_default_str();
  cmd->add_option("--train-fraction", a->train_fraction, "Random mode")->capture_default_str();
  cmd->add_option("--boundary", a->boundary, "Time mode: last training date YYYY-MM-DD");
  cmd->callback([=, &g, &run] {
    SplitSpec spec;
    if (a->mode == "random") {
      if (!(a->train_fraction > 0.0 && a->train_fraction < 1.0)) {
        throw UsageError("--train-fraction must be in (0, 1)");
      }
      spec = SplitSpec::random(a->train_fraction, g.seed.value_or(42));
    } else if (a->mode == "time") {
      if (a->boundary.empty()) throw UsageError("time split requires --boundary");
      auto date = parse_date(a->boundary);
      if (!date) throw UsageError("--boundary must be a YYYY-MM-DD date");
      spec = SplitSpec::by_time(*date);
    } else {
      throw UsageError("--mode must be random or time");
    }
    run = [=] {
      const Corpus corpus = load_corpus(a->corpus);
      const SplitResult result = split_corpus(corpus, spec);
      save_corpus(result.train, a->train_out);
      save_corpus(result.test, a->test_out);
    };
  });
}

struct TrainArgs {
  std::string corpus, model_out;
  std::vector<std::size_t> orders{1, 2};
  unsigned dimensions_log2 = 20;
  std::uint64_t hash_seed = 0;
  std::size_t epochs = 10;
  double learning_rate = 0.1, l2 = 1e-6;
};

void add_train(CLI::App& app, const Globals& g, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("train", "Train the hashed n-gram classifier");
  auto a = std::make_shared<TrainArgs>();
  cmd->add_option("--corpus", a->corpus, "Training corpus")->required();
  cmd->add_option("--model-out", a->model_out, "Model file")->required();
  cmd->add_option("--orders", a->orders, "N-gram orders")->delimiter(',')->capture_default_str();
  cmd->add_option("--dimensions-log2", a->dimensions_log2, "Hash width")->capture_default_str();
  cmd->add_option("--hash-seed", a->hash_seed, "Hash seed")->capture_default_str();
  cmd->add_option("--epochs", a->epochs, "SGD epochs")->capture_default_str();
  cmd->add_option("--learning-rate", a->learning_rate, "SGD step")->capture_default_str();
  cmd->add_option("--l2", a->l2, "L2 penalty")->capture_default_str();
  cmd->callback([=, &g, &run] {
    const FeatureSpace space = feature_space(a->orders, a->dimensions_log2, a->hash_seed);
    TrainConfig config;
    config.epochs = a->epochs;
    config.learning_rate = a->learning_rate;
    config.l2 = a->l2;
    config.seed = g.seed.value_or(config.seed);
    if (!(config.learning_rate > 0.0) || config.l2 < 0.0) {
      throw UsageError("--learning-rate must be positive and --l2 non-negative");
    }
    run = [=] {
      const Corpus corpus = load_corpus(a->corpus);
      train(corpus, space, config).save(fs::path(a->model_out));
    };
  });
}

void add_eval(CLI::App& app, std::ostream& out, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("eval", "Evaluate a model on a labeled corpus");
  auto model = std::make_shared<std::string>();
  auto corpus = std::make_shared<std::string>();
  auto predictions = std::make_shared<std::string>();
  auto output = std::make_shared<std::string>();
  cmd->add_option("--model", *model, "Model file")->required();
  cmd->add_option("--corpus", *corpus, "Test corpus")->required();
  cmd->add_option("--predictions", *predictions, "Per-document TSV id, gold, predicted");
  cmd->add_option("--output", *output, "Summary JSON (default stdout)");
  cmd->callback([=, &out, &run] {
    run = [=, &out] {
      const Model m = Model::load(fs::path(*model));
      const Corpus c = load_corpus(*corpus);
      const EvalCell cell = evaluate(m, c);
      nlohmann::ordered_json j;
      j["corpus"] = c.name();
      j["n"] = cell.gold.size();
      j["correct"] = cell.correct;
      j["accuracy"] = cell.accuracy;
      Output o(*output, out);
      o.stream() << j.dump() << '\n';
      o.close();
      if (!predictions->empty()) {
        Output p(*predictions, out);
        p.stream() << "id\tgold\tpredicted\n";
        for (std::size_t i = 0; i < cell.gold.size(); ++i) {
          p.stream() << cell.document_ids[i] << '\t' << label_name(cell.gold[i]) << '\t'
                     << label_name(cell.predictions[i]) << '\n';
        }
        p.close();
      }
    };
  });
}

void add_experiment(CLI::App& app, const Globals& g, std::ostream& out,
                    std::function<void()>& run) {
  auto* cmd = app.add_subcommand("experiment",
                                 "Run the train/test matrix over datasets and policies");
  auto config = std::make_shared<std::string>();
  auto json_out = std::make_shared<std::string>();
  auto text_out = std::make_shared<std::string>();
  cmd->add_option("--config", *config, "Experiment JSON file")->required();
  cmd->add_option("--json-out", *json_out, "Machine-readable report");
  cmd->add_option("--text-out", *text_out, "Plain-text table (default stdout)");
  cmd->callback([=, &g, &out, &run] {
    run = [=, &g, &out] {
      ExperimentConfig c = load_experiment_config(*config);
      if (g.threads) c.matrix.threads = *g.threads;
      const auto datasets = load_datasets(c);
      const MatrixReport report = run_matrix(datasets, c.matrix);
      if (!json_out->empty()) {
        Output j(*json_out, out);
        write_report_json(report, c.matrix, j.stream());
        j.close();
      }
      Output t(*text_out, out);
      write_report_text(report, t.stream());
      t.close();
    };
  });
}

void add_coverage(CLI::App& app, std::ostream& out, std::function<void()>& run) {
  auto* cmd = app.add_subcommand("coverage",
                                 "Overlap of masking tokens between datasets");
  auto usage = std::make_shared<std::vector<std::string>>();
  auto index = std::make_shared<std::string>();
  auto top = std::make_shared<std::size_t>(3);
  auto output = std::make_shared<std::string>();
  cmd->add_option("--usage", *usage, "NAME=PATH of a usage TSV (repeatable)")->required();
  cmd->add_option("--index", *index, "Entity index used to name the top labels");
  cmd->add_option("--top", *top, "Top labels per dataset")->capture_default_str();
  cmd->add_option("--output", *output, "Report (default stdout)");
  cmd->callback([=, &out, &run] {
    std::vector<std::pair<std::string, std::string>> named;
    for (const std::string& item : *usage) {
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == item.size()) {
        throw UsageError("--usage expects NAME=PATH, got '" + item + "'");
      }
      named.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    run = [=, &out] {
      std::optional<EntityIndex> idx;
      if (!index->empty()) idx = EntityIndex::load(fs::path(*index));
      std::vector<std::set<std::string>> qids;
      std::vector<UsageCounts> counts;
      for (const auto& [name, path] : named) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw Error("cannot open usage file " + path);
        UsageCounts all = read_usage(in, path);
        UsageCounts only_qids;
        for (const auto& [token, count] : all) {
          if (is_qid(token)) only_qids[token] = count;
        }
        qids.push_back(qid_tokens(all));
        counts.push_back(std::move(only_qids));
      }
      Output o(*output, out);
      std::ostream& s = o.stream();
      s << "coverage";
      for (const auto& n : named) s << '\t' << n.first;
      s << '\n';
      for (std::size_t i = 0; i < named.size(); ++i) {
        s << named[i].first;
        for (std::size_t j = 0; j < named.size(); ++j) {
          s << '\t';
          if (qids[i].empty()) {
            s << "n/a";
          } else {
            s << format_fixed(coverage_rate(qids[i], qids[j]), 1);
          }
        }
        s << '\n';
      }
      s << "\ndataset\trank\tqid\tlabel\tcount\n";
      for (std::size_t i = 0; i < named.size(); ++i) {
        const auto ranked = top_labels(counts[i], idx ? &*idx : nullptr, *top);
        for (std::size_t r = 0; r < ranked.size(); ++r) {
          s << named[i].first << '\t' << r + 1 << '\t' << ranked[r].qid << '\t'
            << ranked[r].name << '\t' << ranked[r].count << '\n';
        }
      }
      o.close();
    };
  });
}

void add_synth(CLI::App& app, const Globals& g, std::function<void()>& run) {
  auto* cmd = app.add_subcommand(
      "synth", "Write a synthetic two-period corpus with annotations, indices and config");
  auto dir = std::make_shared<std::string>();
  auto n_docs = std::make_shared<std::size_t>(1000);
  cmd->add_option("--output-dir", *dir, "Directory to create files in")->required();
  cmd->add_option("--n-docs", *n_docs, "Documents per period")->capture_default_str();
  cmd->callback([=, &g, &run] {
    if (*n_docs < 100) throw UsageError("--n-docs must be at least 100");
    run = [=, &g] {
      const SynthData data =
          synth_diachronic_corpus(default_synth_config(g.seed.value_or(1), *n_docs));
      const fs::path out_dir(*dir);
      fs::create_directories(out_dir);
      save_corpus(data.period_a, out_dir / "period-a.jsonl");
      save_corpus(data.period_b, out_dir / "period-b.jsonl");
      save_annotations(data.annotations_a, out_dir / "period-a.ann.jsonl");
      save_annotations(data.annotations_b, out_dir / "period-b.ann.jsonl");
      data.index_a.save(out_dir / "index-a.idx");
      data.index_b.save(out_dir / "index-b.idx");
      nlohmann::ordered_json config;
      config["datasets"] = {
          {{"name", "period-a"}, {"corpus", "period-a.jsonl"},
           {"annotations", "period-a.ann.jsonl"}, {"index", "index-a.idx"}},
          {{"name", "period-b"}, {"corpus", "period-b.jsonl"},
           {"annotations", "period-b.ann.jsonl"}, {"index", "index-b.idx"}}};
      config["policies"] = {"nomask", "nedel", "basicner", "wikid", "wikid-del", "wikid-ner"};
      config["split"] = {{"mode", "random"}, {"train_fraction", 0.8}, {"seed", 42}};
      std::ofstream c(out_dir / "experiment.json", std::ios::binary);
      c << config.dump(2) << '\n';
      if (!c) throw Error("cannot write " + (out_dir / "experiment.json").string());
    };
  });
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Diachronic bias detection and entity masking for fake-news corpora",
               "chronomask"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed for splitting, training and synthesis");
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)");
  app.add_flag("--strict", g.strict, "Fail on malformed dump lines");
  app.add_flag("-v,--verbose", g.verbose, "Print statistics to stderr");

  std::function<void()> run;
  add_ingest(app, g, out, err, run);
  add_lmi(app, g, out, run);
  add_tag(app, out, err, g, run);
  add_index(app, g, err, run);
  add_mask(app, g, out, err, run);
  add_split(app, g, run);
  add_train(app, g, run);
  add_eval(app, out, run);
  add_experiment(app, g, out, run);
  add_coverage(app, out, run);
  add_synth(app, g, run);

  if (args.empty()) {
    err << app.help();
    return kExitUsage;
  }
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    err << "run with --help for usage\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    if (run) run();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
}

}  // namespace chronomask
