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


#include "fixtures.h"

#include <zlib.h>

#include <atomic>
#include <cmath>
#include <set>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <unistd.h>

#include "chronomask/analysis.h"
#include "json.hpp"

namespace chronomask::testing {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = fs::temp_directory_path() /
          ("chronomask-test-" + std::to_string(::getpid()) + "-" +
           std::to_string(counter++));
  fs::remove_all(path_);
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_gzip(const fs::path& path, const std::string& content) {
  gzFile f = gzopen(path.string().c_str(), "wb");
  if (!f) throw std::runtime_error("cannot write " + path.string());
  gzwrite(f, content.data(), static_cast<unsigned>(content.size()));
  gzclose(f);
}

Document doc(std::string id, std::string text, Label label,
             std::optional<std::string> date) {
  Document d;
  d.id = std::move(id);
  d.text = std::move(text);
  d.label = label;
  if (date) d.date = parse_date(*date);
  return d;
}

namespace {

ordered_json item_snak(const std::string& property, const std::string& qid) {
  return {{"snaktype", "value"},
          {"property", property},
          {"datavalue",
           {{"value",
             {{"entity-type", "item"},
              {"numeric-id", std::stoull(qid.substr(1))},
              {"id", qid}}},
            {"type", "wikibase-entityid"}}}};
}

ordered_json time_snak(const std::string& property, const std::string& time) {
  return {{"snaktype", "value"},
          {"property", property},
          {"datavalue",
           {{"value",
             {{"time", time},
              {"timezone", 0},
              {"before", 0},
              {"after", 0},
              {"precision", 11},
              {"calendarmodel", "http://www.wikidata.org/entity/Q1985727"}}},
            {"type", "time"}}}};
}

}  // namespace

std::string dump_line(const DumpEntity& e) {
  ordered_json j;
  j["type"] = "item";
  j["id"] = e.qid;
  j["labels"] = {{"en", {{"language", "en"}, {"value", e.label}}}};
  ordered_json aliases = ordered_json::array();
  for (const auto& a : e.aliases) aliases.push_back({{"language", "en"}, {"value", a}});
  j["aliases"] = {{"en", aliases}};
  ordered_json claims = ordered_json::object();
  if (e.human) {
    claims["P31"] = {{{"mainsnak", item_snak("P31", "Q5")}, {"type", "statement"},
                      {"rank", "normal"}}};
  }
  for (const DumpStatement& s : e.statements) {
    ordered_json st;
    st["mainsnak"] = item_snak(s.property, s.value);
    st["type"] = "statement";
    ordered_json qualifiers = ordered_json::object();
    if (!s.start.empty()) qualifiers["P580"] = {time_snak("P580", s.start)};
    if (!s.end.empty()) qualifiers["P582"] = {time_snak("P582", s.end)};
    if (!qualifiers.empty()) st["qualifiers"] = qualifiers;
    st["rank"] = s.rank;
    if (!claims.contains(s.property)) claims[s.property] = ordered_json::array();
    claims[s.property].push_back(st);
  }
  j["claims"] = claims;
  ordered_json sitelinks = ordered_json::object();
  for (int i = 0; i < e.sitelinks; ++i) {
    const std::string site = "site" + std::to_string(i) + "wiki";
    sitelinks[site] = {{"site", site}, {"title", e.label}};
  }
  j["sitelinks"] = sitelinks;
  return j.dump();
}

std::string value_item_line(const std::string& qid, const std::string& label) {
  DumpEntity e;
  e.qid = qid;
  e.label = label;
  e.human = false;
  return dump_line(e);
}

AnnotatedDocument worked_example_document() {
  AnnotatedDocument d;
  d.document = doc("t4",
                   "18 states including US UK and Australia request PM Modi to "
                   "head a task force to stop coronavirus",
                   Label::kFake);
  const std::string& text = d.document.text;
  auto span = [&](const std::string& surface, NeTag tag) {
    const std::size_t at = text.find(surface);
    return NeSpan{at, at + surface.size(), tag, surface};
  };
  d.spans = {span("US", NeTag::kLoc), span("UK", NeTag::kLoc),
             span("Australia", NeTag::kLoc), span("Modi", NeTag::kPer)};
  return d;
}

std::vector<std::string> worked_example_dump_lines() {
  DumpEntity modi{"Q1058", "Narendra Modi", {"Narendra Damodardas Modi"}, true,
                  {{"P39", "Q22337580", "+2001-10-07T00:00:00Z", "+2014-05-22T00:00:00Z"},
                   {"P39", "Q192711", "+2014-05-26T00:00:00Z", ""},
                   {"P106", "Q82955", "", ""}},
                  150};
  DumpEntity obama{"Q76", "Barack Obama", {"Barack Hussein Obama II", "Obama"}, true,
                   {{"P39", "Q11696", "+2009-01-20T00:00:00Z", "+2017-01-20T00:00:00Z"}},
                   300};
  DumpEntity hanks{"Q2263", "Tom Hanks", {"Thomas Jeffrey Hanks"}, true,
                   {{"P106", "Q33999", "", ""}}, 120};
  return {"[",
          dump_line(modi) + ",",
          dump_line(obama) + ",",
          dump_line(hanks) + ",",
          value_item_line("Q22337580", "Chief Minister of Gujarat") + ",",
          value_item_line("Q192711", "Prime Minister of India") + ",",
          value_item_line("Q11696", "President of the United States") + ",",
          value_item_line("Q33999", "actor") + ",",
          value_item_line("Q82955", "politician"),
          "]"};
}

EntityIndex worked_example_index() {
  std::string dump;
  for (const auto& line : worked_example_dump_lines()) dump += line + "\n";
  std::istringstream in(dump);
  DumpOptions options;
  options.snapshot_date = *parse_date("2020-12-28");
  options.strict = true;
  return index_dump(in, options).index;
}

std::vector<std::pair<MaskPolicy, std::string>> worked_example_expected() {
  return {
      {MaskPolicy::kNoMask,
       "18 states including US UK and Australia request PM Modi to head a "
       "task force to stop coronavirus"},
      {MaskPolicy::kNeDel,
       "18 states including and request PM to head a task force to stop "
       "coronavirus"},
      {MaskPolicy::kBasicNer,
       "18 states including LOC LOC and LOC request PM PER to head a task "
       "force to stop coronavirus"},
      {MaskPolicy::kWikiD,
       "18 states including US UK and Australia request PM Q22337580 to head "
       "a task force to stop coronavirus"},
      {MaskPolicy::kWikiDDel,
       "18 states including and request PM Q22337580 to head a task force to "
       "stop coronavirus"},
      {MaskPolicy::kWikiDNer,
       "18 states including LOC LOC and LOC request PM Q22337580 to head a "
       "task force to stop coronavirus"},
  };
}

std::string generated_dump(std::size_t n, std::size_t malformed) {
  std::ostringstream out;
  out << "[\n";
  const std::size_t gap = malformed ? n / (malformed + 1) : n + 1;
  std::size_t broken = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (broken < malformed && i > 0 && i % gap == 0) {
      out << "{\"type\":\"item\",\"id\":\"Q" << 7000000 + broken << "\",\"labels\":{,\n";
      ++broken;
    }
    DumpEntity e;
    e.qid = "Q" + std::to_string(5000000 + i);
    e.label = "Given" + std::to_string(i) + " Family" + std::to_string(i);
    e.aliases = {"G" + std::to_string(i) + " Family" + std::to_string(i)};
    e.human = i % 10 != 0;
    e.sitelinks = static_cast<int>(i % 97);
    e.statements.push_back({"P39", "Q" + std::to_string(900 + i % 7),
                            "+2000-01-01T00:00:00Z", ""});
    if (i % 3 == 0) e.statements.push_back({"P106", "Q33999", "", ""});
    out << dump_line(e) << (i + 1 < n ? ",\n" : "\n");
  }
  out << "]\n";
  return out.str();
}

Corpus random_corpus(Rng& rng, std::size_t max_docs, std::size_t max_tokens) {
  static const std::vector<std::string> vocab = {
      "alpha", "Beta",  "gamma", "delta,", "RT",   "@user", "url",  "no.",
      "covid-19", "(eps)", "zeta!", "eta",  "theta", "alpha", "beta", "#tag"};
  const std::size_t n_docs = 1 + rng.below(max_docs);
  std::vector<Document> docs;
  for (std::size_t d = 0; d < n_docs; ++d) {
    std::size_t n_tokens = rng.below(max_tokens + 1);
    if (d == 0) n_tokens = std::max<std::size_t>(n_tokens, 2);
    std::string text;
    for (std::size_t t = 0; t < n_tokens; ++t) {
      if (t) text += rng.below(4) == 0 ? "  " : " ";
      text += vocab[rng.below(vocab.size())];
    }
    docs.push_back(doc("r" + std::to_string(d), text,
                       rng.below(2) ? Label::kFake : Label::kReal));
  }
  return Corpus("random", std::move(docs));
}

std::map<std::pair<std::string, Label>, OracleLmiValue> brute_force_lmi(
    const Corpus& corpus, std::size_t n, std::uint64_t min_count,
    std::uint64_t* total, std::array<double, 2>* p_label) {
  // Per-document phrase lists, built by hand from the token windows.
  std::vector<std::vector<std::string>> phrases;
  for (const Document& d : corpus) {
    const auto tokens = tokenize(d.text);
    std::vector<std::string> grams;
    for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
      std::string g = tokens[i];
      for (std::size_t k = 1; k < n; ++k) g += " " + tokens[i + k];
      grams.push_back(g);
    }
    phrases.push_back(std::move(grams));
  }
  std::uint64_t all = 0;
  std::array<std::uint64_t, 2> per_label{};
  std::set<std::string> distinct;
  for (std::size_t i = 0; i < phrases.size(); ++i) {
    all += phrases[i].size();
    per_label[static_cast<int>(corpus[i].label)] += phrases[i].size();
    distinct.insert(phrases[i].begin(), phrases[i].end());
  }
  if (total) *total = all;
  if (p_label) {
    for (int l = 0; l < 2; ++l) {
      (*p_label)[l] = all ? static_cast<double>(per_label[l]) / static_cast<double>(all) : 0;
    }
  }
  std::map<std::pair<std::string, Label>, OracleLmiValue> out;
  for (const std::string& w : distinct) {
    for (Label l : kAllLabels) {
      std::uint64_t c_wl = 0, c_w = 0;
      for (std::size_t i = 0; i < phrases.size(); ++i) {
        for (const auto& g : phrases[i]) {
          if (g != w) continue;
          ++c_w;
          if (corpus[i].label == l) ++c_wl;
        }
      }
      if (c_wl == 0 || c_w < min_count) continue;
      const double P = static_cast<double>(all);
      const double p_wl = static_cast<double>(c_wl) / P;
      const double p_l_w = static_cast<double>(c_wl) / static_cast<double>(c_w);
      const double p_l = static_cast<double>(per_label[static_cast<int>(l)]) / P;
      out[{w, l}] = {c_wl, c_w, p_l_w, p_wl * std::log(p_l_w / p_l)};
    }
  }
  return out;
}

}  // namespace chronomask::testing
