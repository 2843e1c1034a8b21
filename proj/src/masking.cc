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

#include "chronomask/masking.h"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>

#include "chronomask/error.h"
#include "chronomask/parallel.h"
#include "chronomask/text.h"

namespace chronomask {

std::string_view policy_id(MaskPolicy policy) {
  switch (policy) {
    case MaskPolicy::kNoMask: return "nomask";
    case MaskPolicy::kNeDel: return "nedel";
    case MaskPolicy::kBasicNer: return "basicner";
    case MaskPolicy::kWikiD: return "wikid";
    case MaskPolicy::kWikiDDel: return "wikid-del";
    case MaskPolicy::kWikiDNer: return "wikid-ner";
  }
  return "nomask";
}

std::string_view policy_display_name(MaskPolicy policy) {
  switch (policy) {
    case MaskPolicy::kNoMask: return "No Mask";
    case MaskPolicy::kNeDel: return "NE Del";
    case MaskPolicy::kBasicNer: return "Basic NER";
    case MaskPolicy::kWikiD: return "WikiD";
    case MaskPolicy::kWikiDDel: return "WikiD+Del";
    case MaskPolicy::kWikiDNer: return "WikiD+NER";
  }
  return "No Mask";
}

std::optional<MaskPolicy> parse_policy(std::string_view text) {
  const std::string lower = ascii_lower(text);
  for (MaskPolicy p : kAllPolicies) {
    if (lower == policy_id(p) || lower == ascii_lower(policy_display_name(p))) {
      return p;
    }
  }
  return std::nullopt;
}

bool requires_index(MaskPolicy policy) {
  return policy == MaskPolicy::kWikiD || policy == MaskPolicy::kWikiDDel ||
         policy == MaskPolicy::kWikiDNer;
}

namespace {

enum class Action { kKeep, kDelete, kTag, kResolve };

Action action_for(MaskPolicy policy, NeTag tag) {
  const bool person = tag == NeTag::kPer;
  switch (policy) {
    case MaskPolicy::kNoMask: return Action::kKeep;
    case MaskPolicy::kNeDel: return Action::kDelete;
    case MaskPolicy::kBasicNer: return Action::kTag;
    case MaskPolicy::kWikiD: return person ? Action::kResolve : Action::kKeep;
    case MaskPolicy::kWikiDDel: return person ? Action::kResolve : Action::kDelete;
    case MaskPolicy::kWikiDNer: return person ? Action::kResolve : Action::kTag;
  }
  return Action::kKeep;
}

// Collapses the whitespace run around each deletion point to a single
// space, or removes it entirely at either edge of the text. `points` are
// output offsets in ascending order.
std::string collapse_at(std::string text, const std::vector<std::size_t>& points) {
  for (auto it = points.rbegin(); it != points.rend(); ++it) {
    std::size_t p = std::min(*it, text.size());
    std::size_t b = p, e = p;
    while (b > 0 && is_space_byte(text[b - 1])) --b;
    while (e < text.size() && is_space_byte(text[e])) ++e;
    if (b == 0 || e == text.size()) {
      text.erase(b, e - b);
    } else if (e - b > 1 || text[b] != ' ') {
      text.replace(b, e - b, " ");
    }
  }
  return text;
}

}  // namespace

MaskedDocument apply_mask(const AnnotatedDocument& document, MaskPolicy policy,
                          const EntityIndex* index, ResolveMode mode) {
  if (requires_index(policy) && index == nullptr) {
    throw UsageError("policy " + std::string(policy_id(policy)) +
                     " requires an entity index");
  }
  const Document& doc = document.document;
  validate_spans(doc, document.spans);

  MaskedDocument out;
  out.original_id = doc.id;
  out.policy = policy;
  out.replacements.reserve(document.spans.size());

  const Utf8Index positions(doc.text);
  const std::string_view text = doc.text;
  std::string result;
  result.reserve(text.size());
  std::vector<std::size_t> deletion_points;
  std::size_t cursor = 0;

  for (const NeSpan& span : document.spans) {
    const std::size_t b = positions.byte_offset(span.start);
    const std::size_t e = positions.byte_offset(span.end);
    result.append(text.substr(cursor, b - cursor));
    cursor = e;

    Replacement rep{span, std::nullopt};
    switch (action_for(policy, span.tag)) {
      case Action::kKeep:
        rep.token = span.surface;
        result.append(span.surface);
        break;
      case Action::kDelete:
        deletion_points.push_back(result.size());
        break;
      case Action::kTag:
        rep.token = std::string(tag_name(span.tag));
        result.append(*rep.token);
        break;
      case Action::kResolve:
        rep.token = resolve_person_label(*index, span.surface, mode).token;
        result.append(*rep.token);
        break;
    }
    out.replacements.push_back(std::move(rep));
  }
  result.append(text.substr(cursor));
  out.text = deletion_points.empty() ? std::move(result)
                                     : collapse_at(std::move(result), deletion_points);
  return out;
}

MaskedCorpus mask_corpus(const std::vector<AnnotatedDocument>& documents,
                         MaskPolicy policy, const EntityIndex* index,
                         ResolveMode mode, std::string name, unsigned threads) {
  if (requires_index(policy) && index == nullptr) {
    throw UsageError("policy " + std::string(policy_id(policy)) +
                     " requires an entity index");
  }
  std::vector<MaskedDocument> masked(documents.size());
  parallel_for(documents.size(), threads, [&](std::size_t i) {
    try {
      masked[i] = apply_mask(documents[i], policy, index, mode);
    } catch (const Error& e) {
      throw Error("masking document '" + documents[i].document.id +
                  "': " + e.what());
    }
  });

  MaskedCorpus out;
  std::vector<Document> docs;
  docs.reserve(documents.size());
  for (std::size_t i = 0; i < documents.size(); ++i) {
    Document d = documents[i].document;
    d.text = std::move(masked[i].text);
    docs.push_back(std::move(d));
    if (policy == MaskPolicy::kNoMask) continue;
    for (const Replacement& r : masked[i].replacements) {
      // Entities left verbatim are not replacement tokens.
      if (r.token && action_for(policy, r.span.tag) != Action::kKeep) {
        ++out.usage[*r.token];
      }
    }
  }
  out.corpus = Corpus(std::move(name), std::move(docs));
  return out;
}

void write_usage(const UsageCounts& usage, std::ostream& out) {
  out << "token\tcount\n";
  for (const auto& [token, count] : usage) out << token << '\t' << count << '\n';
}

UsageCounts read_usage(std::istream& in, std::string_view source_name) {
  UsageCounts usage;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || (line_no == 1 && line == "token\tcount")) continue;
    const auto tab = line.find('\t');
    std::uint64_t count = 0;
    const char* first = line.data() + (tab == std::string::npos ? 0 : tab + 1);
    const char* last = line.data() + line.size();
    auto [ptr, ec] = std::from_chars(first, last, count);
    if (tab == std::string::npos || tab == 0 || ec != std::errc() || ptr != last) {
      throw Error(std::string(source_name) + ":" + std::to_string(line_no) +
                  ": expected \"token<TAB>count\"");
    }
    usage[line.substr(0, tab)] += count;
  }
  return usage;
}

std::set<std::string> qid_tokens(const UsageCounts& usage) {
  std::set<std::string> out;
  for (const auto& [token, count] : usage) {
    if (count > 0 && is_qid(token)) out.insert(token);
  }
  return out;
}

}  // namespace chronomask
