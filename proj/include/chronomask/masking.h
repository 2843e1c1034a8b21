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

// Entity masking policies.
//
//   NoMask    text unchanged
//   NeDel     every entity span deleted
//   BasicNer  every entity span replaced by its tag ("PER", "LOC", ...)
//   WikiD     PER spans replaced by the resolved Wikidata token; other
//             entities kept verbatim
//   WikiDDel  PER spans resolved, other entities deleted
//   WikiDNer  PER spans resolved, other entities replaced by their tag
//
// Replacement tokens are bare strings. Whitespace runs that a deletion
// leaves behind collapse to one space, or vanish at the text edges. A
// deletion flanked by non-space bytes on both sides leaves one space so the
// neighbours never fuse into a new word.

#ifndef CHRONOMASK_MASKING_H_
#define CHRONOMASK_MASKING_H_

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "chronomask/annotate.h"
#include "chronomask/wikidata.h"

namespace chronomask {

enum class MaskPolicy : std::uint8_t {
  kNoMask,
  kNeDel,
  kBasicNer,
  kWikiD,
  kWikiDDel,
  kWikiDNer,
};

inline constexpr std::array<MaskPolicy, 6> kAllPolicies = {
    MaskPolicy::kNoMask, MaskPolicy::kNeDel,    MaskPolicy::kBasicNer,
    MaskPolicy::kWikiD,  MaskPolicy::kWikiDDel, MaskPolicy::kWikiDNer};

// Command-line spelling: nomask, nedel, basicner, wikid, wikid-del,
// wikid-ner.
std::string_view policy_id(MaskPolicy policy);

// Display spelling: "No Mask", "NE Del", "Basic NER", "WikiD", "WikiD+Del",
// "WikiD+NER".
std::string_view policy_display_name(MaskPolicy policy);

// Accepts either spelling, case-insensitively.
std::optional<MaskPolicy> parse_policy(std::string_view text);

bool requires_index(MaskPolicy policy);

struct Replacement {
  NeSpan span;
  std::optional<std::string> token;  // nullopt for deletions
};

struct MaskedDocument {
  std::string original_id;
  MaskPolicy policy = MaskPolicy::kNoMask;
  std::string text;
  std::vector<Replacement> replacements;  // one per input span, in order
};

// Throws UsageError when a WikiD-family policy has no index and Error when
// a span is invalid for the document.
MaskedDocument apply_mask(const AnnotatedDocument& document, MaskPolicy policy,
                          const EntityIndex* index,
                          ResolveMode mode = ResolveMode::kDumpOrder);

// Replacement token -> number of emissions.
using UsageCounts = std::map<std::string, std::uint64_t>;

struct MaskedCorpus {
  Corpus corpus;
  UsageCounts usage;
};

// Masks every document (in parallel when threads != 1) and keeps ids,
// labels, dates and sources. Errors name the failing document.
MaskedCorpus mask_corpus(const std::vector<AnnotatedDocument>& documents,
                         MaskPolicy policy, const EntityIndex* index,
                         ResolveMode mode, std::string name,
                         unsigned threads = 1);

// "token<TAB>count" lines under a "token\tcount" header, in token order.
void write_usage(const UsageCounts& usage, std::ostream& out);
UsageCounts read_usage(std::istream& in, std::string_view source_name);

// Keys of `usage` that are QIDs.
std::set<std::string> qid_tokens(const UsageCounts& usage);

}  // namespace chronomask

#endif  // CHRONOMASK_MASKING_H_
