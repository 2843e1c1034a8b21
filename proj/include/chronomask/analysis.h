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

// Phrase-label association tables based on Local Mutual Information:
//
//   LMI(w, l) = p(w, l) * log(p(l | w) / p(l))
//
// with p(w, l) = count(w, l) / |P|, p(l | w) = count(w, l) / count(w),
// p(l) = count(l) / |P|, where |P| is the number of phrase occurrences in
// the corpus and count(l) the number of phrase occurrences inside documents
// labeled l.

#ifndef CHRONOMASK_ANALYSIS_H_
#define CHRONOMASK_ANALYSIS_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chronomask/corpus.h"

namespace chronomask {

using TokenSequence = std::vector<std::string>;

// Tokenization rules:
//  * ASCII letters are lowercased; the text is split on ASCII whitespace.
//  * Trailing punctuation is stripped, except that one '.' is kept after
//    a known abbreviation ("no.", "gov.", "mr.") or after a token that
//    already holds an internal '.' ("u.s.").
//  * Leading punctuation is stripped, except that a '@' or '#' directly
//    followed by a word character is kept as a sigil ("@user", "#covid").
//  * Internal punctuation is kept ("covid-19", "clinton's").
//  * Tokens left empty, or holding only a sigil, are dropped.
TokenSequence tokenize(std::string_view text);

// All contiguous windows of `n` tokens, space-joined, in order.
std::vector<std::string> extract_ngrams(std::span<const std::string> tokens,
                                        std::size_t n);

struct LmiEntry {
  std::string phrase;
  Label label = Label::kReal;
  std::uint64_t count_wl = 0;
  std::uint64_t count_w = 0;
  double p_l_given_w = 0.0;
  double lmi = 0.0;
};

struct LmiOptions {
  std::size_t n = 2;
  // Phrases occurring fewer times overall are left out of the table.
  std::uint64_t min_count = 5;
  // 0 selects the natural logarithm.
  double log_base = 0.0;
  unsigned threads = 1;
};

struct LmiTable {
  std::size_t n = 0;
  std::uint64_t total_phrases = 0;           // |P|
  std::array<std::uint64_t, 2> label_counts{};  // count(l), indexed by Label
  std::array<double, 2> p_label{};            // p(l)
  // Grouped by label (real, then fake); within a label sorted by lmi
  // descending, ties broken by phrase ascending. Only pairs with
  // count(w, l) > 0 appear.
  std::vector<LmiEntry> entries;

  double label_probability(Label label) const {
    return p_label[static_cast<int>(label)];
  }
  std::span<const LmiEntry> entries_for(Label label) const;
};

// Counts every n-gram occurrence (not document frequency). Throws Error
// "no phrases" when no document yields an n-gram.
LmiTable compute_lmi(const Corpus& corpus, const LmiOptions& options = {});

struct LmiExportOptions {
  std::size_t top_k = 10;
  double scale = 1e6;
  int lmi_decimals = 0;
};

// Top `top_k` entries of one label. Throws UsageError when top_k is 0.
std::vector<LmiEntry> top_entries(const LmiTable& table, Label label,
                                  std::size_t top_k);

// Tab-separated report, one row per exported entry, with the header
// "phrase\tlabel\tcount_wl\tcount_w\tp_l_given_w\tlmi_scaled".
void export_lmi_tsv(const LmiTable& table, const LmiExportOptions& options,
                    std::ostream& out);

// Aligned plain-text rendering, one block per label.
void export_lmi_text(const LmiTable& table, const LmiExportOptions& options,
                     std::ostream& out);

// Fixed-point formatting that never prints "-0".
std::string format_fixed(double value, int decimals);

}  // namespace chronomask

#endif  // CHRONOMASK_ANALYSIS_H_
