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

// Baseline real/fake classifier: hashed n-gram counts fed to an
// L2-regularized logistic regression trained by plain SGD.
//
// Everything is deterministic for a fixed seed: the epoch order comes from
// the Fisher-Yates shuffle in random.h and updates are applied serially.
// Replacement tokens from masking ("PER", "Q11696") are hashed like any
// other token.

#ifndef CHRONOMASK_CLASSIFIER_H_
#define CHRONOMASK_CLASSIFIER_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "chronomask/corpus.h"
#include "chronomask/masking.h"

namespace chronomask {

struct FeatureSpace {
  std::vector<std::size_t> orders{1, 2};
  std::uint32_t dimensions = 1u << 20;  // power of two
  std::uint64_t hash_seed = 0;

  // Throws UsageError for a non power-of-two width below 2 or an empty or
  // zero order list.
  void validate() const;

  bool operator==(const FeatureSpace&) const = default;
};

struct FeatureCount {
  std::uint32_t bucket = 0;
  double count = 0.0;

  bool operator==(const FeatureCount&) const = default;
};

// Sorted by bucket, one entry per nonzero bucket.
using SparseFeatures = std::vector<FeatureCount>;

// Seeded 64-bit FNV-1a over the gram bytes, finalized with mix64 and
// masked to the space width.
std::uint32_t feature_bucket(std::string_view gram, const FeatureSpace& space);

SparseFeatures featurize(std::string_view text, const FeatureSpace& space);

struct TrainConfig {
  std::size_t epochs = 10;
  double learning_rate = 0.1;
  double l2 = 1e-6;
  std::uint64_t seed = 7;

  bool operator==(const TrainConfig&) const = default;
};

class Model {
 public:
  Model(FeatureSpace space, TrainConfig config, std::vector<double> weights,
        double bias);

  const FeatureSpace& space() const { return space_; }
  const TrainConfig& config() const { return config_; }
  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }

  double score(const SparseFeatures& features) const;

  // Fake iff sigmoid(score) > 0.5, i.e. score > 0; a zero score is Real.
  Label predict(std::string_view text) const;

  // Text format, see docs/file_formats.md. Weights are written with 17
  // significant digits, so a save/load round trip is exact.
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static Model load(std::istream& in, std::string_view source_name);
  static Model load(const std::filesystem::path& path);

 private:
  FeatureSpace space_;
  TrainConfig config_;
  std::vector<double> weights_;
  double bias_ = 0.0;
};

// Logistic loss, y = 1 for Fake. Throws Error unless both labels occur.
Model train(const Corpus& train_set, const FeatureSpace& space,
            const TrainConfig& config);

struct EvalCell {
  std::string train_set;
  std::string test_set;
  MaskPolicy policy = MaskPolicy::kNoMask;
  double accuracy = 0.0;
  std::size_t correct = 0;
  std::vector<std::string> document_ids;
  std::vector<Label> gold;
  std::vector<Label> predictions;
};

// Throws Error for an empty test set. `train_set` and `policy` are left for
// the caller to fill in.
EvalCell evaluate(const Model& model, const Corpus& test_set);

}  // namespace chronomask

#endif  // CHRONOMASK_CLASSIFIER_H_
