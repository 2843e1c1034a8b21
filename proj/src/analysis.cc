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

#include "chronomask/analysis.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "chronomask/error.h"
#include "chronomask/parallel.h"
#include "chronomask/text.h"

namespace chronomask {

namespace {

const std::unordered_set<std::string_view>& abbreviations() {
  static const std::unordered_set<std::string_view> kAbbreviations = {
      "no",   "gov",  "mr",   "mrs",  "ms",   "dr",   "sen",  "rep",
      "gen",  "st",   "jr",   "sr",   "vs",   "prof", "inc",  "co",
      "corp", "ltd",  "lt",   "col",  "sgt",  "capt", "pres", "rev",
      "jan",  "feb",  "mar",  "apr",  "aug",  "sept", "sep",  "oct",
      "nov",  "dec",  "dept", "est",  "approx", "fig", "vol", "ave"};
  return kAbbreviations;
}

bool keeps_trailing_period(std::string_view body) {
  if (body.empty()) return false;
  if (body.find('.') != std::string_view::npos) return true;
  return abbreviations().count(body) > 0;
}

// Applies the stripping rules to one lowercased whitespace-delimited chunk.
std::string_view clean_token(std::string_view raw) {
  std::size_t end = raw.size();
  while (end > 0 && is_punct_byte(raw[end - 1])) --end;
  std::size_t begin = 0;
  while (begin < end && is_punct_byte(raw[begin])) {
    if ((raw[begin] == '@' || raw[begin] == '#') && begin + 1 < end &&
        is_word_byte(raw[begin + 1])) {
      break;
    }
    ++begin;
  }
  if (end < raw.size() && raw[end] == '.' &&
      keeps_trailing_period(raw.substr(begin, end - begin))) {
    ++end;
  }
  std::string_view token = raw.substr(begin, end - begin);
  if (token.empty()) return {};
  if ((token[0] == '@' || token[0] == '#') && token.size() == 1) return {};
  return token;
}

using LabelCounts = std::array<std::uint64_t, 2>;
using PhraseCounts = std::unordered_map<std::string, LabelCounts>;

}  // namespace

TokenSequence tokenize(std::string_view text) {
  TokenSequence tokens;
  const std::string lower = ascii_lower(text);
  std::string_view view(lower);
  std::size_t i = 0;
  while (i < view.size()) {
    while (i < view.size() && is_space_byte(view[i])) ++i;
    std::size_t j = i;
    while (j < view.size() && !is_space_byte(view[j])) ++j;
    if (j > i) {
      std::string_view token = clean_token(view.substr(i, j - i));
      if (!token.empty()) tokens.emplace_back(token);
    }
    i = j;
  }
  return tokens;
}

std::vector<std::string> extract_ngrams(std::span<const std::string> tokens,
                                        std::size_t n) {
  std::vector<std::string> grams;
  if (n == 0 || tokens.size() < n) return grams;
  grams.reserve(tokens.size() - n + 1);
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      gram.push_back(' ');
      gram += tokens[i + k];
    }
    grams.push_back(std::move(gram));
  }
  return grams;
}

std::span<const LmiEntry> LmiTable::entries_for(Label label) const {
  auto first = std::find_if(entries.begin(), entries.end(),
                            [&](const LmiEntry& e) { return e.label == label; });
  auto last = std::find_if(first, entries.end(),
                           [&](const LmiEntry& e) { return e.label != label; });
  return {entries.data() + (first - entries.begin()),
          static_cast<std::size_t>(last - first)};
}

LmiTable compute_lmi(const Corpus& corpus, const LmiOptions& options) {
  if (options.n == 0) throw UsageError("n-gram order must be at least 1");
  if (options.log_base != 0.0 && !(options.log_base > 1.0)) {
    throw UsageError("log base must be greater than 1");
  }

  // Per-chunk counting, merged afterwards. Counts are integer sums, so the
  // merged table does not depend on how chunks were scheduled.
  const unsigned workers =
      std::max<unsigned>(1, std::min<std::size_t>(resolve_threads(options.threads),
                                                   std::max<std::size_t>(corpus.size(), 1)));
  std::vector<PhraseCounts> partial(workers);
  const std::size_t chunk = (corpus.size() + workers - 1) / workers;
  parallel_for(workers, workers, [&](std::size_t w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(corpus.size(), begin + chunk);
    for (std::size_t d = begin; d < end; ++d) {
      const Document& doc = corpus[d];
      TokenSequence tokens = tokenize(doc.text);
      for (auto& gram : extract_ngrams(tokens, options.n)) {
        partial[w][std::move(gram)][static_cast<int>(doc.label)] += 1;
      }
    }
  });
  PhraseCounts counts = std::move(partial[0]);
  for (std::size_t w = 1; w < partial.size(); ++w) {
    for (auto& [phrase, c] : partial[w]) {
      auto& total = counts[phrase];
      total[0] += c[0];
      total[1] += c[1];
    }
  }

  LmiTable table;
  table.n = options.n;
  for (const auto& [phrase, c] : counts) {
    table.label_counts[0] += c[0];
    table.label_counts[1] += c[1];
  }
  table.total_phrases = table.label_counts[0] + table.label_counts[1];
  if (table.total_phrases == 0) {
    throw Error("no phrases: corpus '" + corpus.name() +
                "' has no document with at least " + std::to_string(options.n) +
                " tokens");
  }
  const double total = static_cast<double>(table.total_phrases);
  for (int l = 0; l < 2; ++l) {
    table.p_label[l] = static_cast<double>(table.label_counts[l]) / total;
  }

  const double log_scale =
      options.log_base == 0.0 ? 1.0 : 1.0 / std::log(options.log_base);
  for (const auto& [phrase, c] : counts) {
    const std::uint64_t count_w = c[0] + c[1];
    if (count_w < options.min_count) continue;
    for (Label label : kAllLabels) {
      const std::uint64_t count_wl = c[static_cast<int>(label)];
      if (count_wl == 0) continue;
      LmiEntry entry;
      entry.phrase = phrase;
      entry.label = label;
      entry.count_wl = count_wl;
      entry.count_w = count_w;
      entry.p_l_given_w =
          static_cast<double>(count_wl) / static_cast<double>(count_w);
      const double p_wl = static_cast<double>(count_wl) / total;
      entry.lmi = p_wl *
                  std::log(entry.p_l_given_w / table.label_probability(label)) *
                  log_scale;
      table.entries.push_back(std::move(entry));
    }
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const LmiEntry& a, const LmiEntry& b) {
              if (a.label != b.label) return a.label < b.label;
              if (a.lmi != b.lmi) return a.lmi > b.lmi;
              return a.phrase < b.phrase;
            });
  return table;
}

std::vector<LmiEntry> top_entries(const LmiTable& table, Label label,
                                  std::size_t top_k) {
  if (top_k == 0) throw UsageError("top_k must be positive");
  auto entries = table.entries_for(label);
  const std::size_t k = std::min(top_k, entries.size());
  return {entries.begin(), entries.begin() + k};
}

std::string format_fixed(double value, int decimals) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.*f", decimals, value);
  std::string out(buffer);
  if (out[0] == '-' &&
      out.find_first_not_of("0.", 1) == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

void export_lmi_tsv(const LmiTable& table, const LmiExportOptions& options,
                    std::ostream& out) {
  if (table.entries.empty()) throw Error("LMI table is empty");
  out << "phrase\tlabel\tcount_wl\tcount_w\tp_l_given_w\tlmi_scaled\n";
  for (Label label : kAllLabels) {
    for (const LmiEntry& e : top_entries(table, label, options.top_k)) {
      out << e.phrase << '\t' << label_name(e.label) << '\t' << e.count_wl
          << '\t' << e.count_w << '\t' << format_fixed(e.p_l_given_w, 2)
          << '\t' << format_fixed(e.lmi * options.scale, options.lmi_decimals)
          << '\n';
    }
  }
}

void export_lmi_text(const LmiTable& table, const LmiExportOptions& options,
                     std::ostream& out) {
  if (table.entries.empty()) throw Error("LMI table is empty");
  out << "n=" << table.n << "  |P|=" << table.total_phrases
      << "  p(real)=" << format_fixed(table.p_label[0], 4)
      << "  p(fake)=" << format_fixed(table.p_label[1], 4) << '\n';
  for (Label label : kAllLabels) {
    auto rows = top_entries(table, label, options.top_k);
    std::size_t width = 6;
    for (const auto& e : rows) width = std::max(width, e.phrase.size());
    out << '\n' << label_name(label) << '\n';
    out << std::left << std::setw(static_cast<int>(width)) << "phrase"
        << "  " << std::right << std::setw(12) << "lmi" << "  "
        << std::setw(6) << "p(l|w)" << '\n';
    for (const auto& e : rows) {
      out << std::left << std::setw(static_cast<int>(width)) << e.phrase
          << "  " << std::right << std::setw(12)
          << format_fixed(e.lmi * options.scale, options.lmi_decimals) << "  "
          << std::setw(6) << format_fixed(e.p_l_given_w, 2) << '\n';
    }
  }
}

}  // namespace chronomask
