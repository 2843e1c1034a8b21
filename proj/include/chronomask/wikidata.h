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

// Snapshot-dated person index built from Wikidata JSON dumps.
//
// Only entities with at least one "position held" (P39) or "occupation"
// (P106) statement are retained. Person mentions are resolved to the QID of
// one of those statement values, which the masking policies use as a
// period-independent replacement token.

#ifndef CHRONOMASK_WIKIDATA_H_
#define CHRONOMASK_WIKIDATA_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chronomask/date.h"

namespace chronomask {

// True for "Q" followed by one or more digits.
bool is_qid(std::string_view text);

// Orders QIDs numerically (Q2 < Q10); other strings fall back to
// lexicographic order after all QIDs.
struct QidLess {
  bool operator()(std::string_view a, std::string_view b) const;
};

enum class RoleProperty : std::uint8_t { kP39, kP106 };

std::string_view property_name(RoleProperty property);

struct Statement {
  RoleProperty property = RoleProperty::kP39;
  std::string value_qid;
  std::optional<Date> start_date;
  std::optional<Date> end_date;
  // Position among the entity's statements of the same property, in dump
  // order.
  std::uint32_t dump_order = 0;

  bool operator==(const Statement&) const = default;
};

struct EntityRecord {
  std::string qid;
  std::string primary_label;
  std::vector<std::string> aliases;
  std::vector<Statement> statements;
  std::uint64_t sitelink_count = 0;

  bool operator==(const EntityRecord&) const = default;
};

class EntityIndex {
 public:
  explicit EntityIndex(Date snapshot_date) : snapshot_date_(snapshot_date) {}

  // Throws Error on a duplicate or malformed qid, an empty label, or a
  // statement whose start is after its end.
  void add(EntityRecord record);

  // Human-readable label of a statement value (e.g. Q11696 ->
  // "President of the United States").
  void set_value_label(std::string qid, std::string label);

  Date snapshot_date() const { return snapshot_date_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const EntityRecord* find(std::string_view qid) const;

  // Label of a retained entity or of a statement value; nullopt if unknown.
  std::optional<std::string> label_of(std::string_view qid) const;

  const std::map<std::string, EntityRecord, QidLess>& records() const {
    return records_;
  }
  const std::map<std::string, std::string, QidLess>& value_labels() const {
    return value_labels_;
  }

  // Candidate lists for a normalized full name / single name token, in
  // insertion order. Empty when absent.
  const std::vector<std::string>& qids_for_name(const std::string& key) const;
  const std::vector<std::string>& qids_for_token(const std::string& key) const;

  // Versioned snapshot file; see docs/file_formats.md.
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& path) const;
  static EntityIndex load(std::istream& in, std::string_view source_name);
  static EntityIndex load(const std::filesystem::path& path);

  static constexpr int kFormatVersion = 1;

 private:
  Date snapshot_date_;
  std::map<std::string, EntityRecord, QidLess> records_;
  std::map<std::string, std::string, QidLess> value_labels_;
  std::unordered_map<std::string, std::vector<std::string>> by_name_;
  std::unordered_map<std::string, std::vector<std::string>> by_token_;
};

struct DumpOptions {
  Date snapshot_date{std::chrono::year(1970), std::chrono::month(1),
                     std::chrono::day(1)};
  // Keep only instances of human (P31 = Q5).
  bool persons_only = true;
  // Malformed lines raise Error instead of being counted and skipped.
  bool strict = false;
  std::string language = "en";
  // Keep labels of entities referenced as P39/P106 values. This holds every
  // entity label in memory during the scan.
  bool collect_value_labels = true;
  unsigned threads = 1;
};

struct DumpStats {
  std::size_t lines = 0;
  std::size_t entities = 0;
  std::size_t retained = 0;
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
  std::size_t invalid_statements = 0;
};

struct DumpResult {
  EntityIndex index;
  DumpStats stats;
};

// Scans newline-delimited entity JSON (the standard dump layout; a
// wrapping "[" ... "]" with trailing commas is tolerated). Lines are parsed
// in parallel batches and merged in input order.
DumpResult index_dump(std::istream& in, const DumpOptions& options);

// As above for a file, plain or gzip-compressed; "-" reads stdin.
DumpResult index_dump_file(const std::filesystem::path& path,
                           const DumpOptions& options);

// Exact normalized full-name match; when that is empty, the union of the
// per-token matches of every surface token. Ordered by sitelink count
// descending, then qid ascending.
std::vector<std::string> lookup_by_name(const EntityIndex& index,
                                        std::string_view surface);

enum class ResolveMode { kDumpOrder, kTemporal };
enum class LabelSource { kP39, kP106, kFallbackPer };

std::string_view resolve_mode_name(ResolveMode mode);
std::optional<ResolveMode> parse_resolve_mode(std::string_view text);

struct ResolvedLabel {
  std::string token;
  LabelSource source = LabelSource::kFallbackPer;

  bool operator==(const ResolvedLabel&) const = default;
};

// Picks the replacement token for a person mention from the top lookup
// candidate.
//
// kDumpOrder: first P39 by dump order, else first P106, else "PER".
// kTemporal: the P39 valid at the snapshot date (missing start or end
// counts as open), latest start first; falls back to kDumpOrder when no
// P39 is valid.
ResolvedLabel resolve_person_label(const EntityIndex& index,
                                   std::string_view surface,
                                   ResolveMode mode = ResolveMode::kDumpOrder);

// 100 * |a ∩ b| / |a|. Throws Error when `a` is empty.
double coverage_rate(const std::set<std::string>& labels_a,
                     const std::set<std::string>& labels_b);

struct LabelCount {
  std::string qid;
  std::string name;  // entity label, or the qid when unknown
  std::uint64_t count = 0;

  bool operator==(const LabelCount&) const = default;
};

// The k most frequent tokens, ties broken by qid ascending.
std::vector<LabelCount> top_labels(
    const std::map<std::string, std::uint64_t>& usage,
    const EntityIndex* index, std::size_t k);

}  // namespace chronomask

#endif  // CHRONOMASK_WIKIDATA_H_
