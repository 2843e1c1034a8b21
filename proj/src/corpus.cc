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

#include "chronomask/corpus.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>

#include "chronomask/error.h"
#include "chronomask/random.h"
#include "chronomask/text.h"
#include "json.hpp"

namespace chronomask {

using nlohmann::json;

std::string_view label_name(Label label) {
  return label == Label::kFake ? "fake" : "real";
}

std::optional<Label> parse_label(std::string_view text) {
  std::string lower = ascii_lower(text);
  if (lower == "real") return Label::kReal;
  if (lower == "fake") return Label::kFake;
  return std::nullopt;
}

Corpus::Corpus(std::string name, std::vector<Document> documents)
    : name_(std::move(name)), documents_(std::move(documents)) {
  by_id_.reserve(documents_.size());
  for (std::size_t i = 0; i < documents_.size(); ++i) {
    const std::string& id = documents_[i].id;
    if (id.empty()) {
      throw Error("corpus '" + name_ + "': document " + std::to_string(i) +
                  " has an empty id");
    }
    if (!by_id_.emplace(id, i).second) {
      throw Error("corpus '" + name_ + "': duplicate document id '" + id + "'");
    }
  }
}

const Document* Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  return it == by_id_.end() ? nullptr : &documents_[it->second];
}

namespace {

std::string where(std::string_view source, std::size_t line) {
  return std::string(source) + ":" + std::to_string(line);
}

Document parse_record(const std::string& line, std::string_view source,
                      std::size_t line_no, const LoadOptions& options) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::exception& e) {
    throw Error(where(source, line_no) + ": malformed JSON record: " + e.what());
  }
  if (!record.is_object()) {
    throw Error(where(source, line_no) + ": record is not a JSON object");
  }
  auto required_string = [&](const char* key) -> std::string {
    auto it = record.find(key);
    if (it == record.end()) {
      throw Error(where(source, line_no) + ": missing field \"" + key + "\"");
    }
    if (!it->is_string()) {
      throw Error(where(source, line_no) + ": field \"" + key +
                  "\" must be a string");
    }
    return it->get<std::string>();
  };

  Document doc;
  doc.id = required_string("id");
  if (doc.id.empty()) throw Error(where(source, line_no) + ": empty id");
  doc.text = required_string("text");
  if (doc.text.empty() && !options.allow_empty_text) {
    throw Error(where(source, line_no) + ": document '" + doc.id +
                "' has empty text");
  }
  std::string label = required_string("label");
  auto parsed = parse_label(label);
  if (!parsed) {
    throw Error(where(source, line_no) + ": unknown label '" + label +
                "' (expected real or fake)");
  }
  doc.label = *parsed;

  if (auto it = record.find("date"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw Error(where(source, line_no) + ": field \"date\" must be a string");
    }
    auto date = parse_date(it->get<std::string>());
    if (!date) {
      throw Error(where(source, line_no) + ": invalid date '" +
                  it->get<std::string>() + "' (expected YYYY-MM-DD)");
    }
    doc.date = *date;
  }
  if (auto it = record.find("source"); it != record.end() && !it->is_null()) {
    if (!it->is_string()) {
      throw Error(where(source, line_no) + ": field \"source\" must be a string");
    }
    doc.source = it->get<std::string>();
  }
  return doc;
}

bool is_blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(), is_space_byte);
}

}  // namespace

Corpus read_corpus(std::istream& in, std::string name,
                   std::string_view source_name, const LoadOptions& options) {
  std::vector<Document> documents;
  std::unordered_map<std::string, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    Document doc = parse_record(line, source_name, line_no, options);
    auto [it, inserted] = seen.emplace(doc.id, line_no);
    if (!inserted) {
      throw Error(where(source_name, line_no) + ": duplicate id '" + doc.id +
                  "' (first seen on line " + std::to_string(it->second) + ")");
    }
    documents.push_back(std::move(doc));
  }
  return Corpus(std::move(name), std::move(documents));
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   const LoadOptions& options) {
  (void)format;  // kJsonLines is the only format.
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open corpus file " + path.string());
  return read_corpus(in, path.stem().string(), path.string(), options);
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Document& doc : corpus) {
    nlohmann::ordered_json record;
    record["id"] = doc.id;
    record["text"] = doc.text;
    record["label"] = label_name(doc.label);
    if (doc.date) record["date"] = format_date(*doc.date);
    if (doc.source) record["source"] = *doc.source;
    out << record.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write corpus file " + path.string());
  write_corpus(corpus, out);
  if (!out) throw Error("write failed for " + path.string());
}

SplitSpec SplitSpec::random(double train_fraction, std::uint64_t seed) {
  SplitSpec spec;
  spec.mode = Mode::kRandomHoldout;
  spec.train_fraction = train_fraction;
  spec.seed = seed;
  return spec;
}

SplitSpec SplitSpec::by_time(Date boundary) {
  SplitSpec spec;
  spec.mode = Mode::kTimeBased;
  spec.boundary_date = boundary;
  return spec;
}

namespace {

SplitResult assemble(const Corpus& corpus, const std::vector<bool>& in_train) {
  std::vector<Document> train, test;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    (in_train[i] ? train : test).push_back(corpus[i]);
  }
  return {Corpus(corpus.name() + "/train", std::move(train)),
          Corpus(corpus.name() + "/test", std::move(test))};
}

}  // namespace

SplitResult split_random(const Corpus& corpus, const SplitSpec& spec) {
  if (spec.mode != SplitSpec::Mode::kRandomHoldout) {
    throw UsageError("split_random requires a random-holdout split spec");
  }
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw UsageError("train fraction must lie strictly between 0 and 1");
  }
  const std::size_t n = corpus.size();
  if (n == 0) throw Error("cannot split empty corpus '" + corpus.name() + "'");

  // The epsilon absorbs binary rounding such as 0.29 * 100 = 28.999...
  const auto train_size = static_cast<std::size_t>(
      std::floor(spec.train_fraction * static_cast<double>(n) + 1e-9));

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(spec.seed);
  shuffle(std::span<std::size_t>(order), rng);

  std::vector<bool> in_train(n, false);
  for (std::size_t i = 0; i < train_size; ++i) in_train[order[i]] = true;
  return assemble(corpus, in_train);
}

SplitResult split_by_time(const Corpus& corpus, const SplitSpec& spec) {
  if (spec.mode != SplitSpec::Mode::kTimeBased || !spec.boundary_date) {
    throw UsageError("split_by_time requires a time-based spec with a boundary");
  }
  std::vector<std::string> undated;
  for (const Document& doc : corpus) {
    if (!doc.date) undated.push_back(doc.id);
  }
  if (!undated.empty()) {
    std::string list;
    for (const auto& id : undated) {
      if (!list.empty()) list += ", ";
      list += id;
    }
    throw Error("corpus '" + corpus.name() +
                "': time-based split needs dated documents; undated ids: " +
                list);
  }
  std::vector<bool> in_train(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    in_train[i] = *corpus[i].date <= *spec.boundary_date;
  }
  return assemble(corpus, in_train);
}

SplitResult split_corpus(const Corpus& corpus, const SplitSpec& spec) {
  return spec.mode == SplitSpec::Mode::kTimeBased ? split_by_time(corpus, spec)
                                                  : split_random(corpus, spec);
}

}  // namespace chronomask
