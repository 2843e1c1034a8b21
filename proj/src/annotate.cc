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

#include "chronomask/annotate.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <unordered_set>

#include "chronomask/error.h"
#include "chronomask/text.h"
#include "json.hpp"

namespace chronomask {

using nlohmann::json;

std::string_view tag_name(NeTag tag) {
  switch (tag) {
    case NeTag::kPer: return "PER";
    case NeTag::kLoc: return "LOC";
    case NeTag::kOrg: return "ORG";
    case NeTag::kMisc: return "MISC";
  }
  return "MISC";
}

std::optional<NeTag> parse_tag(std::string_view text) {
  if (text == "PER") return NeTag::kPer;
  if (text == "LOC") return NeTag::kLoc;
  if (text == "ORG") return NeTag::kOrg;
  if (text == "MISC") return NeTag::kMisc;
  return std::nullopt;
}

namespace {

std::string describe(const NeSpan& span) {
  return "(" + std::to_string(span.start) + ", " + std::to_string(span.end) +
         ", " + std::string(tag_name(span.tag)) + ", \"" + span.surface + "\")";
}

void check_span(const Document& document, const Utf8Index& index,
                const NeSpan& span) {
  if (span.start >= span.end || span.end > index.size()) {
    throw Error("document '" + document.id + "': span " + describe(span) +
                " is out of range for text of length " +
                std::to_string(index.size()));
  }
  const std::size_t b = index.byte_offset(span.start);
  const std::size_t e = index.byte_offset(span.end);
  std::string_view covered = std::string_view(document.text).substr(b, e - b);
  if (covered != span.surface) {
    throw Error("document '" + document.id + "': span " + describe(span) +
                " does not match text \"" + std::string(covered) + "\"");
  }
}

bool overlaps(const NeSpan& a, const NeSpan& b) {
  return a.start < b.end && b.start < a.end;
}

}  // namespace

void validate_spans(const Document& document,
                    const std::vector<NeSpan>& spans) {
  Utf8Index index(document.text);
  for (std::size_t i = 0; i < spans.size(); ++i) {
    check_span(document, index, spans[i]);
    if (i > 0 && spans[i].start < spans[i - 1].end) {
      throw Error("document '" + document.id + "': span " +
                  describe(spans[i]) + " overlaps or precedes " +
                  describe(spans[i - 1]));
    }
  }
}

std::vector<NeSpan> resolve_overlaps(std::vector<NeSpan> spans,
                                     std::size_t* discarded) {
  std::sort(spans.begin(), spans.end(), [](const NeSpan& a, const NeSpan& b) {
    const std::size_t la = a.end - a.start, lb = b.end - b.start;
    if (la != lb) return la > lb;
    return a < b;
  });
  std::vector<NeSpan> kept;
  for (auto& span : spans) {
    bool clash = std::any_of(kept.begin(), kept.end(), [&](const NeSpan& k) {
      return overlaps(k, span);
    });
    if (clash) {
      if (discarded) ++*discarded;
    } else {
      kept.push_back(std::move(span));
    }
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

AnnotationSet read_annotations(const Corpus& corpus, std::istream& in,
                               std::string_view source_name) {
  std::vector<std::vector<NeSpan>> spans_by_doc(corpus.size());
  std::vector<bool> has_record(corpus.size(), false);
  std::unordered_map<std::string_view, std::size_t> position;
  for (std::size_t i = 0; i < corpus.size(); ++i) position[corpus[i].id] = i;

  AnnotationSet result;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::all_of(line.begin(), line.end(), is_space_byte)) continue;
    const std::string where =
        std::string(source_name) + ":" + std::to_string(line_no);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::exception& e) {
      throw Error(where + ": malformed annotation record: " + e.what());
    }
    if (!record.is_object() || !record.contains("doc_id") ||
        !record["doc_id"].is_string()) {
      throw Error(where + ": record needs a string \"doc_id\"");
    }
    const std::string doc_id = record["doc_id"].get<std::string>();
    auto pos = position.find(doc_id);
    if (pos == position.end()) {
      throw Error(where + ": unknown document id '" + doc_id + "'");
    }
    if (has_record[pos->second]) {
      throw Error(where + ": duplicate annotation record for '" + doc_id + "'");
    }
    has_record[pos->second] = true;
    const Document& document = corpus[pos->second];
    Utf8Index index(document.text);

    std::vector<NeSpan> spans;
    if (record.contains("spans")) {
      const json& list = record["spans"];
      if (!list.is_array()) throw Error(where + ": \"spans\" must be an array");
      for (const json& s : list) {
        if (!s.is_object() || !s.contains("start") || !s.contains("end") ||
            !s.contains("tag") || !s.contains("text") ||
            !s["start"].is_number_unsigned() || !s["end"].is_number_unsigned() ||
            !s["tag"].is_string() || !s["text"].is_string()) {
          throw Error(where + ": document '" + doc_id +
                      "': span needs unsigned start/end and string tag/text");
        }
        auto tag = parse_tag(s["tag"].get<std::string>());
        if (!tag) {
          throw Error(where + ": document '" + doc_id + "': unknown tag '" +
                      s["tag"].get<std::string>() + "'");
        }
        NeSpan span{s["start"].get<std::size_t>(), s["end"].get<std::size_t>(),
                    *tag, s["text"].get<std::string>()};
        try {
          check_span(document, index, span);
        } catch (const Error& e) {
          throw Error(where + ": " + e.what());
        }
        spans.push_back(std::move(span));
      }
    }
    spans_by_doc[pos->second] =
        resolve_overlaps(std::move(spans), &result.discarded_overlaps);
  }

  result.documents.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    result.documents.push_back({corpus[i], std::move(spans_by_doc[i])});
  }
  return result;
}

AnnotationSet load_annotations(const Corpus& corpus,
                               const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open annotation file " + path.string());
  return read_annotations(corpus, in, path.string());
}

void write_annotations(const std::vector<AnnotatedDocument>& documents,
                       std::ostream& out) {
  for (const auto& doc : documents) {
    nlohmann::ordered_json record;
    record["doc_id"] = doc.document.id;
    record["spans"] = nlohmann::ordered_json::array();
    for (const NeSpan& span : doc.spans) {
      nlohmann::ordered_json s;
      s["start"] = span.start;
      s["end"] = span.end;
      s["tag"] = tag_name(span.tag);
      s["text"] = span.surface;
      record["spans"].push_back(std::move(s));
    }
    out << record.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void save_annotations(const std::vector<AnnotatedDocument>& documents,
                      const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write annotation file " + path.string());
  write_annotations(documents, out);
}

std::vector<AnnotatedDocument> unannotated(const Corpus& corpus) {
  std::vector<AnnotatedDocument> docs;
  docs.reserve(corpus.size());
  for (const Document& d : corpus) docs.push_back({d, {}});
  return docs;
}

Corpus corpus_of(const std::vector<AnnotatedDocument>& documents,
                 std::string name) {
  std::vector<Document> docs;
  docs.reserve(documents.size());
  for (const auto& d : documents) docs.push_back(d.document);
  return Corpus(std::move(name), std::move(docs));
}

void Gazetteer::add(std::string_view name, NeTag tag) {
  std::string key = normalize_name(name);
  if (key.empty()) return;
  const std::size_t tokens =
      static_cast<std::size_t>(std::count(key.begin(), key.end(), ' ')) + 1;
  max_tokens_ = std::max(max_tokens_, tokens);
  entries_[std::move(key)] = tag;
}

std::optional<NeTag> Gazetteer::find(const std::string& normalized) const {
  auto it = entries_.find(normalized);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

Gazetteer Gazetteer::read(std::istream& in, std::string_view source_name) {
  Gazetteer gazetteer;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.rfind('\t');
    const std::string where =
        std::string(source_name) + ":" + std::to_string(line_no);
    if (tab == std::string::npos) {
      throw Error(where + ": expected \"name<TAB>TAG\"");
    }
    auto tag = parse_tag(std::string_view(line).substr(tab + 1));
    if (!tag) {
      throw Error(where + ": unknown tag '" + line.substr(tab + 1) + "'");
    }
    gazetteer.add(std::string_view(line).substr(0, tab), *tag);
  }
  return gazetteer;
}

Gazetteer Gazetteer::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open gazetteer " + path.string());
  return read(in, path.string());
}

AnnotatedDocument tag_with_gazetteer(const Document& document,
                                     const Gazetteer& gazetteer) {
  AnnotatedDocument result{document, {}};
  if (gazetteer.empty()) return result;

  const std::string_view text = document.text;
  const std::vector<NameToken> tokens = name_tokens(text);
  std::vector<std::string> lowered;
  lowered.reserve(tokens.size());
  for (const auto& t : tokens) {
    lowered.push_back(ascii_lower(text.substr(t.begin, t.end - t.begin)));
  }
  Utf8Index index(text);

  std::size_t i = 0;
  while (i < tokens.size()) {
    const std::size_t longest =
        std::min(gazetteer.max_tokens(), tokens.size() - i);
    std::size_t matched = 0;
    NeTag tag = NeTag::kMisc;
    for (std::size_t len = longest; len >= 1; --len) {
      std::string key = lowered[i];
      for (std::size_t k = 1; k < len; ++k) {
        key.push_back(' ');
        key += lowered[i + k];
      }
      if (auto found = gazetteer.find(key)) {
        matched = len;
        tag = *found;
        break;
      }
    }
    if (matched == 0) {
      ++i;
      continue;
    }
    const std::size_t b = tokens[i].begin;
    const std::size_t e = tokens[i + matched - 1].end;
    result.spans.push_back({index.codepoint_at(b), index.codepoint_at(e), tag,
                            std::string(text.substr(b, e - b))});
    i += matched;
  }
  return result;
}

}  // namespace chronomask
