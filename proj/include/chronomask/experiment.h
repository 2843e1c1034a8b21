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

// Train/test matrices over datasets and masking policies.
//
// For every (training dataset, policy) pair a model is trained on the
// masked training split and evaluated on the in-domain test split and on
// every other dataset's masked test material. Each non-baseline policy is
// compared against No Mask on the same test documents with McNemar's test,
// Bonferroni-corrected over the number of non-baseline policies.

#ifndef CHRONOMASK_EXPERIMENT_H_
#define CHRONOMASK_EXPERIMENT_H_

#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "chronomask/annotate.h"
#include "chronomask/classifier.h"
#include "chronomask/corpus.h"
#include "chronomask/masking.h"
#include "chronomask/significance.h"
#include "chronomask/wikidata.h"

namespace chronomask {

struct DatasetInput {
  std::string name;
  std::vector<AnnotatedDocument> documents;
  // Snapshot used to resolve this dataset's person mentions; required for
  // WikiD-family policies.
  std::shared_ptr<const EntityIndex> index;
};

// Material used for out-of-domain evaluation.
enum class OodTest { kTestSplit, kFullData };

struct MatrixConfig {
  std::vector<MaskPolicy> policies{kAllPolicies.begin(), kAllPolicies.end()};
  SplitSpec split;
  FeatureSpace space;
  TrainConfig train;
  ResolveMode resolve_mode = ResolveMode::kDumpOrder;
  OodTest ood_test = OodTest::kTestSplit;
  unsigned threads = 1;
};

struct MatrixCell {
  std::string train_set;
  std::string test_set;
  MaskPolicy policy = MaskPolicy::kNoMask;
  bool in_domain = false;
  EvalCell eval;
  // Comparison against No Mask on the same (train, test) pair; empty for
  // the baseline itself or when No Mask is not part of the run.
  std::optional<McNemarResult> vs_baseline;
};

struct MatrixReport {
  std::vector<std::string> datasets;
  std::vector<MaskPolicy> policies;
  std::uint32_t comparisons = 0;  // Bonferroni m
  // Ordered by training dataset, then policy, then test dataset.
  std::vector<MatrixCell> cells;

  const MatrixCell* find(const std::string& train_set,
                         const std::string& test_set, MaskPolicy policy) const;
};

// Throws UsageError for an empty dataset list, duplicate names or policies,
// or a WikiD-family policy on a dataset without an index. Other errors are
// rethrown as Error with (train, test, policy) context.
MatrixReport run_matrix(const std::vector<DatasetInput>& datasets,
                        const MatrixConfig& config);

// Machine-readable grid.
void write_report_json(const MatrixReport& report, const MatrixConfig& config,
                       std::ostream& out);

// Plain-text grid; '*' marks p_adjusted < 0.05 against No Mask.
void write_report_text(const MatrixReport& report, std::ostream& out);

struct DatasetSpec {
  std::string name;
  std::filesystem::path corpus;
  std::optional<std::filesystem::path> annotations;
  std::optional<std::filesystem::path> index;
};

struct ExperimentConfig {
  std::vector<DatasetSpec> datasets;
  MatrixConfig matrix;
};

// JSON configuration file; relative paths resolve against the file's
// directory. See docs/file_formats.md.
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

// Loads corpora, annotations and indices named by the config.
std::vector<DatasetInput> load_datasets(const ExperimentConfig& config);

}  // namespace chronomask

#endif  // CHRONOMASK_EXPERIMENT_H_
