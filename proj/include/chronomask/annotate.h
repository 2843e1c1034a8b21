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

// Named-entity annotations over corpus documents.
//
// Spans use code-point offsets into the document text, end-exclusive. The
// annotation file is newline-delimited JSON:
//
//   {"doc_id": "d1", "spans": [{"start": 0, "end": 12, "tag": "PER",
//                               "text": "Barack Obama"}]}
//
// Any external NER system can produce this file; Gazetteer offers a small
// deterministic tagger for fixtures and corpora without annotations.

#ifndef CHRONOMASK_ANNOTATE_H_
#define CHRONOMASK_ANNOTATE_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "chronomask/corpus.h"

namespace chronomask {

enum class NeTag : std::uint8_t { kPer, kLoc, kOrg, kMisc };

std::string_view tag_name(NeTag tag);

// Exact match on "PER", "LOC", "ORG", "MISC".
std::optional<NeTag> parse_tag(std::string_view text);

struct NeSpan {
  std::size_t start = 0;  // code point, inclusive
  std::size_t end = 0;    // code point, exclusive
  NeTag tag = NeTag::kMisc;
  std::string surface;

  auto operator<=>(const NeSpan&) const = default;
};

struct AnnotatedDocument {
  Document document;
  std::vector<NeSpan> spans;  // sorted by start, non-overlapping
};

// Throws Error naming the document and span when a span is out of range,
// empty, or its surface differs from the text it covers, or when spans are
// unsorted or overlap.
void validate_spans(const Document& document, const std::vector<NeSpan>& spans);

// Keeps the longest span of every overlapping group (leftmost on equal
// length) and returns the survivors sorted by start. `discarded`, when
// given, is incremented once per dropped span.
std::vector<NeSpan> resolve_overlaps(std::vector<NeSpan> spans,
                                     std::size_t* discarded = nullptr);

struct AnnotationSet {
  std::vector<AnnotatedDocument> documents;  // corpus order
  std::size_t discarded_overlaps = 0;
};

// Pairs every corpus document with its spans. Documents without a record
// get an empty span list. Unknown doc ids, duplicate records, unknown tags,
// out-of-range offsets and surface mismatches are errors.
AnnotationSet load_annotations(const Corpus& corpus,
                               const std::filesystem::path& path);
AnnotationSet read_annotations(const Corpus& corpus, std::istream& in,
                               std::string_view source_name);

// One record per document, in the given order.
void write_annotations(const std::vector<AnnotatedDocument>& documents,
                       std::ostream& out);
void save_annotations(const std::vector<AnnotatedDocument>& documents,
                      const std::filesystem::path& path);

// Documents with no spans.
std::vector<AnnotatedDocument> unannotated(const Corpus& corpus);

// Rebuilds a corpus from annotated documents.
Corpus corpus_of(const std::vector<AnnotatedDocument>& documents,
                 std::string name);

// Names normalized with normalize_name() mapped to entity tags.
class Gazetteer {
 public:
  // Later additions of the same normalized name replace earlier ones.
  // Names that normalize to the empty string are ignored.
  void add(std::string_view name, NeTag tag);

  std::optional<NeTag> find(const std::string& normalized) const;

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::size_t max_tokens() const { return max_tokens_; }

  // Tab-separated "name<TAB>TAG" lines; blank lines and lines starting
  // with '#' are skipped.
  static Gazetteer load(const std::filesystem::path& path);
  static Gazetteer read(std::istream& in, std::string_view source_name);

 private:
  std::unordered_map<std::string, NeTag> entries_;
  std::size_t max_tokens_ = 0;
};

// Greedy longest match over name tokens (see text.h), case-insensitive.
AnnotatedDocument tag_with_gazetteer(const Document& document,
                                     const Gazetteer& gazetteer);

}  // namespace chronomask

#endif  // CHRONOMASK_ANNOTATE_H_
