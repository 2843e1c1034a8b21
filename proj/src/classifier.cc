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

#include "chronomask/classifier.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "chronomask/analysis.h"
#include "chronomask/error.h"
#include "chronomask/random.h"
#include "json.hpp"

namespace chronomask {

void FeatureSpace::validate() const {
  if (dimensions < 2 || (dimensions & (dimensions - 1)) != 0) {
    throw UsageError("feature dimensions must be a power of two >= 2, got " +
                     std::to_string(dimensions));
  }
  if (orders.empty()) throw UsageError("at least one n-gram order is required");
  for (std::size_t n : orders) {
    if (n == 0) throw UsageError("n-gram orders must be positive");
  }
}

std::uint32_t feature_bucket(std::string_view gram, const FeatureSpace& space) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ mix64(space.hash_seed);
  for (char c : gram) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::uint32_t>(mix64(h) & (space.dimensions - 1));
}

SparseFeatures featurize(std::string_view text, const FeatureSpace& space) {
  const TokenSequence tokens = tokenize(text);
  std::vector<std::uint32_t> buckets;
  for (std::size_t n : space.orders) {
    for (const auto& gram : extract_ngrams(tokens, n)) {
      buckets.push_back(feature_bucket(gram, space));
    }
  }
  std::sort(buckets.begin(), buckets.end());
  SparseFeatures features;
  for (std::uint32_t b : buckets) {
    if (!features.empty() && features.back().bucket == b) {
      features.back().count += 1.0;
    } else {
      features.push_back({b, 1.0});
    }
  }
  return features;
}

Model::Model(FeatureSpace space, TrainConfig config, std::vector<double> weights,
             double bias)
    : space_(std::move(space)),
      config_(config),
      weights_(std::move(weights)),
      bias_(bias) {
  space_.validate();
  if (weights_.size() != space_.dimensions) {
    throw Error("model weight vector has " + std::to_string(weights_.size()) +
                " entries, expected " + std::to_string(space_.dimensions));
  }
  if (!std::isfinite(bias_) ||
      !std::all_of(weights_.begin(), weights_.end(),
                   [](double w) { return std::isfinite(w); })) {
    throw Error("model has non-finite weights");
  }
}

double Model::score(const SparseFeatures& features) const {
  double s = bias_;
  for (const auto& f : features) s += weights_[f.bucket] * f.count;
  return s;
}

Label Model::predict(std::string_view text) const {
  return score(featurize(text, space_)) > 0.0 ? Label::kFake : Label::kReal;
}

namespace {

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

double sigmoid(double s) {
  if (s >= 0) return 1.0 / (1.0 + std::exp(-s));
  const double e = std::exp(s);
  return e / (1.0 + e);
}

}  // namespace

void Model::save(std::ostream& out) const {
  std::size_t nonzero = 0;
  for (double w : weights_) nonzero += w != 0.0;
  nlohmann::ordered_json header;
  header["format_version"] = 1;
  header["orders"] = space_.orders;
  header["dimensions"] = space_.dimensions;
  header["hash_seed"] = space_.hash_seed;
  header["epochs"] = config_.epochs;
  header["learning_rate"] = format_double(config_.learning_rate);
  header["l2"] = format_double(config_.l2);
  header["seed"] = config_.seed;
  header["bias"] = format_double(bias_);
  header["nonzero"] = nonzero;
  out << header.dump() << '\n';
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (weights_[i] != 0.0) out << i << '\t' << format_double(weights_[i]) << '\n';
  }
}

void Model::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write model file " + path.string());
  save(out);
  if (!out) throw Error("write failed for " + path.string());
}

Model Model::load(std::istream& in, std::string_view source_name) {
  const std::string src(source_name);
  std::string line;
  if (!std::getline(in, line)) throw Error(src + ": empty model file");
  FeatureSpace space;
  TrainConfig config;
  double bias = 0;
  std::size_t nonzero = 0;
  auto parse_double = [&](const std::string& s) {
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') {
      throw Error(src + ": invalid number '" + s + "'");
    }
    return v;
  };
  try {
    auto header = nlohmann::json::parse(line);
    if (header.at("format_version").get<int>() != 1) {
      throw Error(src + ": unsupported model format_version");
    }
    space.orders = header.at("orders").get<std::vector<std::size_t>>();
    space.dimensions = header.at("dimensions").get<std::uint32_t>();
    space.hash_seed = header.at("hash_seed").get<std::uint64_t>();
    config.epochs = header.at("epochs").get<std::size_t>();
    config.learning_rate = parse_double(header.at("learning_rate").get<std::string>());
    config.l2 = parse_double(header.at("l2").get<std::string>());
    config.seed = header.at("seed").get<std::uint64_t>();
    bias = parse_double(header.at("bias").get<std::string>());
    nonzero = header.at("nonzero").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(src + ":1: invalid model header: " + e.what());
  }
  try {
    space.validate();
  } catch (const UsageError& e) {
    throw Error(src + ":1: " + e.what());
  }
  std::vector<double> weights(space.dimensions, 0.0);
  for (std::size_t i = 0; i < nonzero; ++i) {
    if (!std::getline(in, line)) throw Error(src + ": truncated model file");
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error(src + ":" + std::to_string(i + 2) + ": expected index<TAB>weight");
    }
    const double index = parse_double(line.substr(0, tab));
    if (index < 0 || index >= space.dimensions || index != std::floor(index)) {
      throw Error(src + ":" + std::to_string(i + 2) + ": bucket out of range");
    }
    weights[static_cast<std::size_t>(index)] = parse_double(line.substr(tab + 1));
  }
  return Model(std::move(space), config, std::move(weights), bias);
}

Model Model::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open model file " + path.string());
  return load(in, path.string());
}

Model train(const Corpus& train_set, const FeatureSpace& space,
            const TrainConfig& config) {
  space.validate();
  if (!(config.learning_rate > 0.0) || config.l2 < 0.0) {
    throw UsageError("learning rate must be positive and L2 non-negative");
  }
  std::size_t fake = 0;
  for (const Document& d : train_set) fake += d.label == Label::kFake;
  if (fake == 0 || fake == train_set.size()) {
    throw Error("training set '" + train_set.name() +
                "' must contain both real and fake documents");
  }

  std::vector<SparseFeatures> features;
  std::vector<double> targets;
  features.reserve(train_set.size());
  for (const Document& d : train_set) {
    features.push_back(featurize(d.text, space));
    targets.push_back(d.label == Label::kFake ? 1.0 : 0.0);
  }

  // Weights are stored as scale * v so the L2 shrinkage of every weight is
  // a single multiplication per step.
  std::vector<double> v(space.dimensions, 0.0);
  double scale = 1.0;
  double bias = 0.0;
  const double decay = 1.0 - config.learning_rate * config.l2;

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(config.seed);
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle(std::span<std::size_t>(order), rng);
    for (std::size_t i : order) {
      const SparseFeatures& x = features[i];
      double s = bias;
      for (const auto& f : x) s += scale * v[f.bucket] * f.count;
      const double g = sigmoid(s) - targets[i];
      scale *= decay;
      const double step = config.learning_rate * g / scale;
      for (const auto& f : x) v[f.bucket] -= step * f.count;
      bias -= config.learning_rate * g;
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
    }
  }
  for (double& w : v) w *= scale;
  return Model(space, config, std::move(v), bias);
}

EvalCell evaluate(const Model& model, const Corpus& test_set) {
  if (test_set.empty()) {
    throw Error("cannot evaluate on empty test set '" + test_set.name() + "'");
  }
  EvalCell cell;
  cell.test_set = test_set.name();
  cell.document_ids.reserve(test_set.size());
  for (const Document& d : test_set) {
    const Label predicted = model.predict(d.text);
    cell.document_ids.push_back(d.id);
    cell.gold.push_back(d.label);
    cell.predictions.push_back(predicted);
    cell.correct += predicted == d.label;
  }
  cell.accuracy =
      static_cast<double>(cell.correct) / static_cast<double>(test_set.size());
  return cell;
}

}  // namespace chronomask
