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

// Labeled real/fake corpora: loading, serialization and train/test splits.
//
// Corpus files are newline-delimited JSON, one document per line:
//
//   {"id": "d1", "text": "...", "label": "real", "date": "2015-03-01",
//    "source": "..."}
//
// `date` and `source` are optional. Labels are read case-insensitively and
// always written lowercase.

#ifndef CHRONOMASK_CORPUS_H_
#define CHRONOMASK_CORPUS_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chronomask/date.h"

namespace chronomask {

enum class Label : std::uint8_t { kReal = 0, kFake = 1 };

inline constexpr std::array<Label, 2> kAllLabels = {Label::kReal, Label::kFake};

std::string_view label_name(Label label);
std::optional<Label> parse_label(std::string_view text);

struct Document {
  std::string id;
  std::string text;
  Label label = Label::kReal;
  std::optional<Date> date;
  std::optional<std::string> source;

  bool operator==(const Document&) const = default;
};

// An ordered, id-unique collection of documents. Immutable once built.
class Corpus {
 public:
  Corpus() = default;

  // Throws Error on an empty or duplicate id.
  Corpus(std::string name, std::vector<Document> documents);

  const std::string& name() const { return name_; }
  const std::vector<Document>& documents() const { return documents_; }
  std::size_t size() const { return documents_.size(); }
  bool empty() const { return documents_.empty(); }
  const Document& operator[](std::size_t i) const { return documents_[i]; }

  auto begin() const { return documents_.begin(); }
  auto end() const { return documents_.end(); }

  // nullptr when absent.
  const Document* find(std::string_view id) const;

 private:
  std::string name_;
  std::vector<Document> documents_;
  std::unordered_map<std::string, std::size_t> by_id_;
};

enum class CorpusFormat { kJsonLines };

struct LoadOptions {
  // Reject documents whose text is empty unless set.
  bool allow_empty_text = false;
};

// Reads a corpus; the corpus name is the file stem. Errors carry the file
// name and 1-based line number.
Corpus load_corpus(const std::filesystem::path& path,
                   CorpusFormat format = CorpusFormat::kJsonLines,
                   const LoadOptions& options = {});

Corpus read_corpus(std::istream& in, std::string name,
                   std::string_view source_name,
                   const LoadOptions& options = {});

// One JSON object per line with keys in the order id, text, label, date,
// source.
void write_corpus(const Corpus& corpus, std::ostream& out);
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

struct SplitSpec {
  enum class Mode { kRandomHoldout, kTimeBased };

  Mode mode = Mode::kRandomHoldout;
  double train_fraction = 0.8;
  std::optional<Date> boundary_date;
  std::uint64_t seed = 42;

  static SplitSpec random(double train_fraction, std::uint64_t seed);
  static SplitSpec by_time(Date boundary);
};

struct SplitResult {
  Corpus train;
  Corpus test;
};

// Shuffles document positions with Rng(spec.seed) and the Fisher-Yates
// walk from random.h, assigns the first floor(fraction * N) shuffled
// positions to train, and returns both parts in original load order.
SplitResult split_random(const Corpus& corpus, const SplitSpec& spec);

// Documents dated on or before the boundary go to train; load order is
// preserved. Throws Error listing every undated id.
SplitResult split_by_time(const Corpus& corpus, const SplitSpec& spec);

// Dispatches on spec.mode.
SplitResult split_corpus(const Corpus& corpus, const SplitSpec& spec);

}  // namespace chronomask

#endif  // CHRONOMASK_CORPUS_H_
