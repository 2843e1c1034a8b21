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

#include "chronomask/wikidata.h"

#include <unistd.h>
#include <zlib.h>

#include <algorithm>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <unordered_set>

#include "chronomask/error.h"
#include "chronomask/parallel.h"
#include "chronomask/text.h"
#include "json.hpp"

namespace chronomask {

using nlohmann::json;

bool is_qid(std::string_view text) {
  if (text.size() < 2 || text[0] != 'Q') return false;
  return std::all_of(text.begin() + 1, text.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

bool QidLess::operator()(std::string_view a, std::string_view b) const {
  const bool qa = is_qid(a), qb = is_qid(b);
  if (qa != qb) return qa;
  if (qa) {
    // Strip leading zeros so Q007 and Q7 compare by value.
    auto digits = [](std::string_view q) {
      q.remove_prefix(1);
      while (q.size() > 1 && q[0] == '0') q.remove_prefix(1);
      return q;
    };
    std::string_view da = digits(a), db = digits(b);
    if (da.size() != db.size()) return da.size() < db.size();
    if (da != db) return da < db;
  }
  return a < b;
}

std::string_view property_name(RoleProperty property) {
  return property == RoleProperty::kP39 ? "P39" : "P106";
}

namespace {

const std::vector<std::string>& empty_list() {
  static const std::vector<std::string> kEmpty;
  return kEmpty;
}

void push_unique(std::vector<std::string>& list, const std::string& qid) {
  if (std::find(list.begin(), list.end(), qid) == list.end()) {
    list.push_back(qid);
  }
}

bool is_word_token(std::string_view text, const NameToken& t) {
  return t.end - t.begin >= 2 && is_word_byte(text[t.begin]);
}

}  // namespace

void EntityIndex::add(EntityRecord record) {
  if (!is_qid(record.qid)) {
    throw Error("entity index: malformed qid '" + record.qid + "'");
  }
  if (record.primary_label.empty()) {
    throw Error("entity index: " + record.qid + " has an empty label");
  }
  if (records_.count(record.qid)) {
    throw Error("entity index: duplicate qid " + record.qid);
  }
  for (const Statement& s : record.statements) {
    if (!is_qid(s.value_qid)) {
      throw Error("entity index: " + record.qid + " has malformed value '" +
                  s.value_qid + "'");
    }
    if (s.start_date && s.end_date && *s.start_date > *s.end_date) {
      throw Error("entity index: " + record.qid + " statement " +
                  s.value_qid + " starts after it ends");
    }
  }
  std::vector<std::string> names{record.primary_label};
  for (const auto& alias : record.aliases) {
    if (alias.empty()) {
      throw Error("entity index: " + record.qid + " has an empty alias");
    }
    names.push_back(alias);
  }
  for (const auto& name : names) {
    std::string key = normalize_name(name);
    if (!key.empty()) push_unique(by_name_[key], record.qid);
    for (const NameToken& t : name_tokens(name)) {
      if (!is_word_token(name, t)) continue;
      push_unique(by_token_[ascii_lower(name.substr(t.begin, t.end - t.begin))],
                  record.qid);
    }
  }
  std::string qid = record.qid;
  records_.emplace(std::move(qid), std::move(record));
}

void EntityIndex::set_value_label(std::string qid, std::string label) {
  value_labels_[std::move(qid)] = std::move(label);
}

const EntityRecord* EntityIndex::find(std::string_view qid) const {
  auto it = records_.find(std::string(qid));
  return it == records_.end() ? nullptr : &it->second;
}

std::optional<std::string> EntityIndex::label_of(std::string_view qid) const {
  if (auto it = value_labels_.find(std::string(qid)); it != value_labels_.end()) {
    return it->second;
  }
  if (const EntityRecord* r = find(qid)) return r->primary_label;
  return std::nullopt;
}

const std::vector<std::string>& EntityIndex::qids_for_name(
    const std::string& key) const {
  auto it = by_name_.find(key);
  return it == by_name_.end() ? empty_list() : it->second;
}

const std::vector<std::string>& EntityIndex::qids_for_token(
    const std::string& key) const {
  auto it = by_token_.find(key);
  return it == by_token_.end() ? empty_list() : it->second;
}

void EntityIndex::save(std::ostream& out) const {
  nlohmann::ordered_json header;
  header["format_version"] = kFormatVersion;
  header["snapshot_date"] = format_date(snapshot_date_);
  header["record_count"] = records_.size();
  header["value_label_count"] = value_labels_.size();
  out << header.dump() << '\n';
  for (const auto& [qid, r] : records_) {
    nlohmann::ordered_json line;
    line["qid"] = r.qid;
    line["label"] = r.primary_label;
    line["aliases"] = r.aliases;
    line["sitelinks"] = r.sitelink_count;
    line["statements"] = nlohmann::ordered_json::array();
    for (const Statement& s : r.statements) {
      nlohmann::ordered_json st;
      st["property"] = property_name(s.property);
      st["value"] = s.value_qid;
      if (s.start_date) st["start"] = format_date(*s.start_date);
      if (s.end_date) st["end"] = format_date(*s.end_date);
      st["order"] = s.dump_order;
      line["statements"].push_back(std::move(st));
    }
    out << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
  for (const auto& [qid, label] : value_labels_) {
    nlohmann::ordered_json line;
    line["value_qid"] = qid;
    line["label"] = label;
    out << line.dump(-1, ' ', false, json::error_handler_t::replace) << '\n';
  }
}

void EntityIndex::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write index file " + path.string());
  save(out);
  if (!out) throw Error("write failed for " + path.string());
}

EntityIndex EntityIndex::load(std::istream& in, std::string_view source_name) {
  std::string line;
  std::size_t line_no = 0;
  auto where = [&] {
    return std::string(source_name) + ":" + std::to_string(line_no);
  };
  auto next_json = [&]() -> json {
    if (!std::getline(in, line)) {
      throw Error(std::string(source_name) + ": unexpected end of index file");
    }
    ++line_no;
    try {
      return json::parse(line);
    } catch (const json::exception& e) {
      throw Error(where() + ": malformed index line: " + e.what());
    }
  };

  json header = next_json();
  try {
    if (header.at("format_version").get<int>() != kFormatVersion) {
      throw Error(where() + ": unsupported index format_version " +
                  header.at("format_version").dump());
    }
    EntityIndex index(parse_date_or_throw(
        header.at("snapshot_date").get<std::string>(), "snapshot_date"));
    const auto record_count = header.at("record_count").get<std::size_t>();
    const auto label_count = header.value("value_label_count", std::size_t{0});
    for (std::size_t i = 0; i < record_count; ++i) {
      json j = next_json();
      EntityRecord r;
      r.qid = j.at("qid").get<std::string>();
      r.primary_label = j.at("label").get<std::string>();
      r.aliases = j.at("aliases").get<std::vector<std::string>>();
      r.sitelink_count = j.at("sitelinks").get<std::uint64_t>();
      for (const json& st : j.at("statements")) {
        Statement s;
        const std::string prop = st.at("property").get<std::string>();
        if (prop == "P39") {
          s.property = RoleProperty::kP39;
        } else if (prop == "P106") {
          s.property = RoleProperty::kP106;
        } else {
          throw Error(where() + ": unknown property '" + prop + "'");
        }
        s.value_qid = st.at("value").get<std::string>();
        if (st.contains("start")) {
          s.start_date = parse_date_or_throw(st["start"].get<std::string>(),
                                             "statement start");
        }
        if (st.contains("end")) {
          s.end_date =
              parse_date_or_throw(st["end"].get<std::string>(), "statement end");
        }
        s.dump_order = st.at("order").get<std::uint32_t>();
        r.statements.push_back(std::move(s));
      }
      index.add(std::move(r));
    }
    for (std::size_t i = 0; i < label_count; ++i) {
      json j = next_json();
      index.set_value_label(j.at("value_qid").get<std::string>(),
                            j.at("label").get<std::string>());
    }
    return index;
  } catch (const json::exception& e) {
    throw Error(where() + ": invalid index content: " + e.what());
  }
}

EntityIndex EntityIndex::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open index file " + path.string());
  return load(in, path.string());
}

// ---------------------------------------------------------------------------
// Dump scanning.

namespace {

struct ParsedLine {
  enum class Kind { kSkip, kMalformed, kItem };
  Kind kind = Kind::kSkip;
  std::string error;
  std::string qid;
  std::string label;
  std::optional<EntityRecord> record;
  std::size_t invalid_statements = 0;
};

int parse_int(std::string_view s, bool* ok) {
  int v = 0;
  if (s.empty()) *ok = false;
  for (char c : s) {
    if (c < '0' || c > '9') {
      *ok = false;
      return 0;
    }
    v = v * 10 + (c - '0');
  }
  return v;
}

// Wikidata time values look like "+2001-10-07T00:00:00Z". Unspecified
// month/day (00, or a precision coarser than a day) widen to the first day
// of the period for starts and to the last day for ends.
std::optional<Date> parse_wikidata_time(const json& value, bool is_end) {
  if (!value.is_object() || !value.contains("time") ||
      !value["time"].is_string()) {
    return std::nullopt;
  }
  std::string_view t = value["time"].get_ref<const std::string&>();
  if (t.empty() || t[0] != '+') return std::nullopt;
  t.remove_prefix(1);
  const auto d1 = t.find('-');
  if (d1 == std::string_view::npos || t.size() < d1 + 6) return std::nullopt;
  bool ok = true;
  if (d1 > 4) return std::nullopt;
  int year = parse_int(t.substr(0, d1), &ok);
  int month = parse_int(t.substr(d1 + 1, 2), &ok);
  int day = parse_int(t.substr(d1 + 4, 2), &ok);
  if (!ok || year < 1) return std::nullopt;
  const int precision = value.value("precision", 11);
  if (precision < 9) return std::nullopt;
  if (precision < 10) month = 0;
  if (precision < 11) day = 0;

  using namespace std::chrono;
  if (month == 0) {
    return is_end ? Date{std::chrono::year(year), December, std::chrono::day(31)}
                  : Date{std::chrono::year(year), January, std::chrono::day(1)};
  }
  if (month > 12) return std::nullopt;
  if (day == 0) {
    if (is_end) {
      year_month_day_last last{std::chrono::year(year),
                               month_day_last{std::chrono::month(month)}};
      return Date{last};
    }
    day = 1;
  }
  Date date{std::chrono::year(year), std::chrono::month(month),
            std::chrono::day(day)};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::optional<Date> qualifier_date(const json& statement, const char* property,
                                   bool is_end) {
  auto q = statement.find("qualifiers");
  if (q == statement.end() || !q->is_object()) return std::nullopt;
  auto list = q->find(property);
  if (list == q->end() || !list->is_array()) return std::nullopt;
  for (const json& snak : *list) {
    if (!snak.is_object() || snak.value("snaktype", "") != "value") continue;
    auto dv = snak.find("datavalue");
    if (dv == snak.end() || !dv->is_object() || !dv->contains("value")) continue;
    if (auto date = parse_wikidata_time((*dv)["value"], is_end)) return date;
  }
  return std::nullopt;
}

// The item id of a statement's main value, or empty.
std::string statement_value_qid(const json& statement) {
  auto snak = statement.find("mainsnak");
  if (snak == statement.end() || !snak->is_object()) return {};
  if (snak->value("snaktype", "") != "value") return {};
  auto dv = snak->find("datavalue");
  if (dv == snak->end() || !dv->is_object()) return {};
  auto value = dv->find("value");
  if (value == dv->end() || !value->is_object()) return {};
  if (auto id = value->find("id"); id != value->end() && id->is_string()) {
    return id->get<std::string>();
  }
  if (auto num = value->find("numeric-id");
      num != value->end() && num->is_number_unsigned()) {
    return "Q" + std::to_string(num->get<std::uint64_t>());
  }
  return {};
}

const json* claims_of(const json& entity, const char* property) {
  auto claims = entity.find("claims");
  if (claims == entity.end() || !claims->is_object()) return nullptr;
  auto list = claims->find(property);
  if (list == claims->end() || !list->is_array()) return nullptr;
  return &*list;
}

std::string_view trim_line(std::string_view line) {
  while (!line.empty() && is_space_byte(line.front())) line.remove_prefix(1);
  while (!line.empty() && is_space_byte(line.back())) line.remove_suffix(1);
  if (!line.empty() && line.back() == ',') line.remove_suffix(1);
  return line;
}

ParsedLine parse_dump_line(std::string_view raw, const DumpOptions& options) {
  ParsedLine out;
  std::string_view line = trim_line(raw);
  if (line.empty() || line == "[" || line == "]") return out;

  json entity;
  try {
    entity = json::parse(line);
  } catch (const json::exception& e) {
    out.kind = ParsedLine::Kind::kMalformed;
    out.error = std::string("invalid JSON: ") + e.what();
    return out;
  }
  if (!entity.is_object() || !entity.contains("id") || !entity["id"].is_string()) {
    out.kind = ParsedLine::Kind::kMalformed;
    out.error = "entity without a string \"id\"";
    return out;
  }
  std::string id = entity["id"].get<std::string>();
  if (!is_qid(id)) return out;  // properties, lexemes
  out.kind = ParsedLine::Kind::kItem;
  out.qid = id;

  auto text_in_language = [&](const char* field) -> std::string {
    auto f = entity.find(field);
    if (f == entity.end() || !f->is_object()) return {};
    auto l = f->find(options.language);
    if (l == f->end() || !l->is_object()) return {};
    return l->value("value", "");
  };
  out.label = text_in_language("labels");

  std::vector<std::string> aliases;
  if (auto a = entity.find("aliases"); a != entity.end() && a->is_object()) {
    if (auto l = a->find(options.language); l != a->end() && l->is_array()) {
      for (const json& alias : *l) {
        if (!alias.is_object()) continue;
        std::string value = alias.value("value", "");
        if (value.empty() || value == out.label) continue;
        if (std::find(aliases.begin(), aliases.end(), value) == aliases.end()) {
          aliases.push_back(std::move(value));
        }
      }
    }
  }

  EntityRecord record;
  record.qid = id;
  for (RoleProperty property : {RoleProperty::kP39, RoleProperty::kP106}) {
    const std::string name(property_name(property));
    const json* list = claims_of(entity, name.c_str());
    if (!list) continue;
    std::uint32_t order = 0;
    for (const json& st : *list) {
      if (!st.is_object() || st.value("rank", "normal") == "deprecated") continue;
      std::string value = statement_value_qid(st);
      if (!is_qid(value)) continue;
      Statement s;
      s.property = property;
      s.value_qid = std::move(value);
      s.start_date = qualifier_date(st, "P580", false);
      s.end_date = qualifier_date(st, "P582", true);
      if (s.start_date && s.end_date && *s.start_date > *s.end_date) {
        ++out.invalid_statements;
        continue;
      }
      s.dump_order = order++;
      record.statements.push_back(std::move(s));
    }
  }
  if (record.statements.empty()) return out;

  if (options.persons_only) {
    bool human = false;
    if (const json* p31 = claims_of(entity, "P31")) {
      for (const json& st : *p31) {
        if (st.is_object() && statement_value_qid(st) == "Q5") human = true;
      }
    }
    if (!human) return out;
  }

  if (out.label.empty()) {
    if (aliases.empty()) return out;
    out.label = aliases.front();
    aliases.erase(aliases.begin());
  }
  record.primary_label = out.label;
  record.aliases = std::move(aliases);
  if (auto s = entity.find("sitelinks"); s != entity.end() && s->is_object()) {
    record.sitelink_count = s->size();
  }
  out.record = std::move(record);
  return out;
}

// Reads lines through zlib, which passes uncompressed input through
// unchanged.
class GzLineReader {
 public:
  explicit GzLineReader(gzFile file) : file_(file) {}
  ~GzLineReader() {
    if (file_) gzclose(file_);
  }
  GzLineReader(const GzLineReader&) = delete;
  GzLineReader& operator=(const GzLineReader&) = delete;

  bool next(std::string& line) {
    line.clear();
    for (;;) {
      if (pos_ == len_) {
        if (eof_) return !line.empty();
        int n = gzread(file_, buffer_, sizeof(buffer_));
        if (n < 0) {
          int code = 0;
          throw Error(std::string("decompression error: ") + gzerror(file_, &code));
        }
        if (n == 0) {
          eof_ = true;
          continue;
        }
        pos_ = 0;
        len_ = static_cast<std::size_t>(n);
      }
      const char* start = buffer_ + pos_;
      const void* nl = std::memchr(start, '\n', len_ - pos_);
      if (nl) {
        const std::size_t take = static_cast<const char*>(nl) - start;
        line.append(start, take);
        pos_ += take + 1;
        return true;
      }
      line.append(start, len_ - pos_);
      pos_ = len_;
    }
  }

 private:
  gzFile file_;
  char buffer_[1 << 16];
  std::size_t pos_ = 0;
  std::size_t len_ = 0;
  bool eof_ = false;
};

DumpResult scan(const std::function<bool(std::string&)>& next_line,
                const DumpOptions& options) {
  DumpResult result{EntityIndex(options.snapshot_date), {}};
  std::unordered_map<std::string, std::string> all_labels;
  constexpr std::size_t kBatch = 4096;
  std::vector<std::string> batch;
  std::vector<ParsedLine> parsed;
  bool more = true;

  while (more) {
    batch.clear();
    std::string line;
    while (batch.size() < kBatch) {
      if (!next_line(line)) {
        more = false;
        break;
      }
      batch.push_back(std::move(line));
    }
    parsed.assign(batch.size(), ParsedLine{});
    parallel_for(batch.size(), options.threads, [&](std::size_t i) {
      parsed[i] = parse_dump_line(batch[i], options);
    });

    for (std::size_t i = 0; i < parsed.size(); ++i) {
      const std::size_t line_no = result.stats.lines + 1;
      ++result.stats.lines;
      ParsedLine& p = parsed[i];
      if (p.kind == ParsedLine::Kind::kSkip) continue;
      if (p.kind == ParsedLine::Kind::kMalformed) {
        if (options.strict) {
          throw Error("dump line " + std::to_string(line_no) + ": " + p.error);
        }
        ++result.stats.malformed;
        continue;
      }
      ++result.stats.entities;
      result.stats.invalid_statements += p.invalid_statements;
      if (options.collect_value_labels && !p.label.empty()) {
        all_labels.emplace(p.qid, p.label);
      }
      if (!p.record) continue;
      if (result.index.find(p.qid)) {
        ++result.stats.duplicates;
        continue;
      }
      result.index.add(std::move(*p.record));
      ++result.stats.retained;
    }
  }

  if (options.collect_value_labels) {
    for (const auto& [qid, record] : result.index.records()) {
      for (const Statement& s : record.statements) {
        auto it = all_labels.find(s.value_qid);
        if (it != all_labels.end()) {
          result.index.set_value_label(s.value_qid, it->second);
        }
      }
    }
  }
  if (result.index.empty()) {
    std::cerr << "warning: no entities with P39/P106 statements were indexed\n";
  }
  return result;
}

}  // namespace

DumpResult index_dump(std::istream& in, const DumpOptions& options) {
  return scan([&](std::string& line) { return static_cast<bool>(std::getline(in, line)); },
              options);
}

DumpResult index_dump_file(const std::filesystem::path& path,
                           const DumpOptions& options) {
  gzFile file = path == "-" ? gzdopen(dup(fileno(stdin)), "rb")
                            : gzopen(path.string().c_str(), "rb");
  if (!file) throw Error("cannot open dump " + path.string());
  GzLineReader reader(file);
  try {
    return scan([&](std::string& line) { return reader.next(line); }, options);
  } catch (const Error& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

std::vector<std::string> lookup_by_name(const EntityIndex& index,
                                        std::string_view surface) {
  std::vector<std::string> candidates = index.qids_for_name(normalize_name(surface));
  if (candidates.empty()) {
    for (const NameToken& t : name_tokens(surface)) {
      if (!is_word_token(surface, t)) continue;
      for (const auto& qid : index.qids_for_token(
               ascii_lower(surface.substr(t.begin, t.end - t.begin)))) {
        push_unique(candidates, qid);
      }
    }
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](const std::string& a, const std::string& b) {
              const auto sa = index.find(a)->sitelink_count;
              const auto sb = index.find(b)->sitelink_count;
              if (sa != sb) return sa > sb;
              return QidLess{}(a, b);
            });
  return candidates;
}

std::string_view resolve_mode_name(ResolveMode mode) {
  return mode == ResolveMode::kTemporal ? "temporal" : "dump-order";
}

std::optional<ResolveMode> parse_resolve_mode(std::string_view text) {
  if (text == "dump-order") return ResolveMode::kDumpOrder;
  if (text == "temporal") return ResolveMode::kTemporal;
  return std::nullopt;
}

namespace {

const Statement* first_by_dump_order(const EntityRecord& record,
                                     RoleProperty property) {
  const Statement* best = nullptr;
  for (const Statement& s : record.statements) {
    if (s.property != property) continue;
    if (!best || s.dump_order < best->dump_order) best = &s;
  }
  return best;
}

ResolvedLabel from_statement(const Statement& s) {
  return {s.value_qid, s.property == RoleProperty::kP39 ? LabelSource::kP39
                                                        : LabelSource::kP106};
}

}  // namespace

ResolvedLabel resolve_person_label(const EntityIndex& index,
                                   std::string_view surface, ResolveMode mode) {
  const ResolvedLabel fallback{"PER", LabelSource::kFallbackPer};
  std::vector<std::string> candidates = lookup_by_name(index, surface);
  if (candidates.empty()) return fallback;
  const EntityRecord& record = *index.find(candidates.front());

  if (mode == ResolveMode::kTemporal) {
    const Date at = index.snapshot_date();
    const Statement* best = nullptr;
    for (const Statement& s : record.statements) {
      if (s.property != RoleProperty::kP39) continue;
      if (s.start_date && *s.start_date > at) continue;
      if (s.end_date && *s.end_date < at) continue;
      if (!best) {
        best = &s;
        continue;
      }
      // Missing start sorts before any dated start.
      const bool later = s.start_date && (!best->start_date ||
                                          *s.start_date > *best->start_date);
      const bool same = s.start_date == best->start_date;
      if (later || (same && s.dump_order < best->dump_order)) best = &s;
    }
    if (best) return from_statement(*best);
  }

  if (const Statement* s = first_by_dump_order(record, RoleProperty::kP39)) {
    return from_statement(*s);
  }
  if (const Statement* s = first_by_dump_order(record, RoleProperty::kP106)) {
    return from_statement(*s);
  }
  return fallback;
}

double coverage_rate(const std::set<std::string>& labels_a,
                     const std::set<std::string>& labels_b) {
  if (labels_a.empty()) throw Error("coverage rate: first label set is empty");
  std::size_t shared = 0;
  for (const auto& label : labels_a) shared += labels_b.count(label);
  return 100.0 * static_cast<double>(shared) /
         static_cast<double>(labels_a.size());
}

std::vector<LabelCount> top_labels(
    const std::map<std::string, std::uint64_t>& usage, const EntityIndex* index,
    std::size_t k) {
  std::vector<LabelCount> ranked;
  for (const auto& [qid, count] : usage) {
    if (count == 0) continue;
    std::string name = qid;
    if (index) {
      if (auto label = index->label_of(qid)) name = *label;
    }
    ranked.push_back({qid, std::move(name), count});
  }
  std::sort(ranked.begin(), ranked.end(),
            [](const LabelCount& a, const LabelCount& b) {
              if (a.count != b.count) return a.count > b.count;
              return QidLess{}(a.qid, b.qid);
            });
  if (ranked.size() > k) ranked.resize(k);
  return ranked;
}

}  // namespace chronomask
