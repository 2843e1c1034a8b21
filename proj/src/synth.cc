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


#include "chronomask/synth.h"

#include <array>
#include <cstdio>
#include <set>

#include "chronomask/error.h"
#include "chronomask/random.h"
#include "chronomask/text.h"

namespace chronomask {

namespace {

using std::chrono::day;
using std::chrono::month;
using std::chrono::sys_days;
using std::chrono::year;

constexpr std::array<const char*, 20> kFirstA = {
    "Aldric", "Bryn",   "Corwin", "Delia",  "Emrys",  "Fenna",   "Garrick",
    "Hesper", "Ilsa",   "Jorund", "Kestrel", "Liora", "Maddox",  "Nerys",
    "Orrin",  "Perrin", "Quilla", "Rowan",  "Sable",  "Tamsin"};
constexpr std::array<const char*, 20> kLastA = {
    "Vantrell",   "Oakhurst",    "Pellweather", "Dunmore",    "Ashcombe",
    "Brightwater", "Calloway",   "Fernsby",     "Glenholt",   "Harrowgate",
    "Kilbride",   "Larkspur",    "Merriweather", "Northcote", "Pennyfeather",
    "Quarrington", "Ravensworth", "Stonebridge", "Thistlewood", "Underhill"};
constexpr std::array<const char*, 20> kFirstB = {
    "Ulric",  "Vesna",  "Wystan",  "Xanthe", "Yorick",  "Zinnia", "Alaric",
    "Brisa",  "Cassian", "Dagny",  "Evander", "Freya",  "Gideon", "Halcyon",
    "Isolde", "Jasper", "Kaia",    "Leander", "Mireille", "Nico"};
constexpr std::array<const char*, 20> kLastB = {
    "Westerly",  "Ambergate", "Blackthorn", "Coldridge",     "Dovecote",
    "Elmstead",  "Foxhollow", "Greywell",   "Hollingsworth", "Ironside",
    "Juniper",   "Kingsmere", "Lowther",    "Marchbank",     "Nettlefold",
    "Ormsby",    "Pinecrest", "Redfern",    "Silverdale",    "Tarrant"};

// Topic words by period, then role, three per role.
constexpr std::array<std::array<std::array<const char*, 3>, 4>, 2> kTopics = {{
    {{{"zorvat", "kelmish", "brandow"},
      {"quillop", "tressin", "morvane"},
      {"flinder", "grottel", "hasperin"},
      {"jandrel", "plovik", "sturren"}}},
    {{{"vexmoor", "dralline", "cupperth"},
      {"ombriel", "skathe", "weltrin"},
      {"yarrowin", "nubbet", "pelquist"},
      {"rondavel", "tinsker", "glaumon"}}},
}};

constexpr std::array<const char*, 40> kFiller = {
    "the",      "a",        "report",   "officials", "said",     "on",
    "after",    "new",      "plan",     "statement", "week",     "today",
    "claims",   "according", "sources", "announced", "meeting",  "public",
    "video",    "news",     "update",   "latest",   "comments",  "during",
    "visit",    "interview", "local",   "national", "policy",    "budget",
    "event",    "story",    "shared",   "online",   "post",      "viral",
    "message",  "speech",   "crowd",    "question"};

constexpr std::array<const char*, 6> kPlaces = {
    "Lindenport", "Marrowdale", "Eastwick", "Brackenfield", "Saltmere",
    "Highcliff"};

struct Chunk {
  std::string text;
  std::optional<NeTag> tag;
};

std::string surname(const std::string& name) {
  return name.substr(name.rfind(' ') + 1);
}

Date add_days(Date base, std::uint64_t days) {
  return Date(sys_days(base) + std::chrono::days(static_cast<int>(days)));
}

// Joins chunks with single spaces and records a span per tagged chunk.
AnnotatedDocument render(std::string id, const std::vector<Chunk>& chunks,
                         Label label, Date date) {
  AnnotatedDocument doc;
  doc.document.id = std::move(id);
  doc.document.label = label;
  doc.document.date = date;
  std::string& text = doc.document.text;
  for (const Chunk& c : chunks) {
    if (!text.empty()) text += ' ';
    // Generated text is ASCII, so bytes and code points coincide.
    if (c.tag) {
      doc.spans.push_back({text.size(), text.size() + c.text.size(), *c.tag, c.text});
    }
    text += c.text;
  }
  return doc;
}

}  // namespace

const std::vector<SynthRole>& synth_roles() {
  static const std::vector<SynthRole> roles = {
      {"Q11696", RoleProperty::kP39, "President of the United States", Label::kFake},
      {"Q22337580", RoleProperty::kP39, "Chief Minister of Gujarat", Label::kReal},
      {"Q30185", RoleProperty::kP39, "mayor", Label::kReal},
      {"Q33999", RoleProperty::kP106, "actor", Label::kFake},
  };
  return roles;
}

SynthConfig default_synth_config(std::uint64_t seed, std::size_t n_docs) {
  SynthConfig config;
  config.seed = seed;
  config.n_docs = n_docs;
  const auto& roles = synth_roles();
  for (std::size_t i = 0; i < kFirstA.size(); ++i) {
    std::string a = std::string(kFirstA[i]) + " " + kLastA[i];
    std::string b = std::string(kFirstB[i]) + " " + kLastB[i];
    const std::string& role = roles[i % roles.size()].qid;
    config.role_map[a] = role;
    config.role_map[b] = role;
    config.period_a_persons.push_back(std::move(a));
    config.period_b_persons.push_back(std::move(b));
  }
  return config;
}

SynthData synth_diachronic_corpus(const SynthConfig& config) {
  if (config.n_docs < 100) {
    throw UsageError("synthetic corpus needs n_docs >= 100, got " +
                     std::to_string(config.n_docs));
  }
  const auto& a = config.period_a_persons;
  const auto& b = config.period_b_persons;
  if (a.empty() || a.size() != b.size()) {
    throw UsageError("period person lists must be nonempty and of equal size");
  }
  if (!(config.label_fidelity >= 0.0 && config.label_fidelity <= 1.0)) {
    throw UsageError("label_fidelity must be in [0, 1]");
  }

  const auto& roles = synth_roles();
  auto role_index = [&](const std::string& person) -> std::size_t {
    auto it = config.role_map.find(person);
    if (it == config.role_map.end()) {
      throw UsageError("person '" + person + "' has no role");
    }
    for (std::size_t r = 0; r < roles.size(); ++r) {
      if (roles[r].qid == it->second) return r;
    }
    throw UsageError("person '" + person + "' has unsupported role " + it->second);
  };

  std::set<std::string> names_a, surnames_a;
  for (const auto& p : a) {
    if (name_tokens(p).size() < 2) {
      throw UsageError("person name '" + p + "' needs a first name and a surname");
    }
    if (!names_a.insert(normalize_name(p)).second ||
        !surnames_a.insert(normalize_name(surname(p))).second) {
      throw UsageError("duplicate period-A name or surname: " + p);
    }
  }
  std::set<std::string> surnames_b;
  for (const auto& p : b) {
    if (name_tokens(p).size() < 2) {
      throw UsageError("person name '" + p + "' needs a first name and a surname");
    }
    if (names_a.count(normalize_name(p)) ||
        surnames_a.count(normalize_name(surname(p)))) {
      throw Error("person name '" + p + "' appears in both periods");
    }
    if (!surnames_b.insert(normalize_name(surname(p))).second) {
      throw UsageError("duplicate period-B surname: " + p);
    }
  }

  // Persons grouped by role; counterparts share the slot.
  std::vector<std::vector<std::size_t>> by_role(roles.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::size_t r = role_index(a[i]);
    if (role_index(b[i]) != r) {
      throw UsageError("'" + a[i] + "' and its counterpart '" + b[i] +
                       "' have different roles");
    }
    by_role[r].push_back(i);
  }
  std::vector<std::size_t> active_roles;
  for (std::size_t r = 0; r < roles.size(); ++r) {
    if (!by_role[r].empty()) active_roles.push_back(r);
  }

  SynthData data{Corpus(), Corpus(), {}, {},
                 EntityIndex(Date{year(2016), month(1), day(4)}),
                 EntityIndex(Date{year(2020), month(12), day(28)}),
                 {}};
  for (const SynthRole& role : roles) {
    data.index_a.set_value_label(role.qid, role.label);
    data.index_b.set_value_label(role.qid, role.label);
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int period = 0; period < 2; ++period) {
      const std::string& name = period == 0 ? a[i] : b[i];
      const SynthRole& role = roles[role_index(name)];
      EntityRecord record;
      record.qid = "Q" + std::to_string((period == 0 ? 97000001 : 97100001) + i);
      record.primary_label = name;
      record.sitelink_count = 20 + i;
      Statement s;
      s.property = role.property;
      s.value_qid = role.qid;
      s.start_date = period == 0 ? Date{year(2010), month(1), day(20)}
                                 : Date{year(2017), month(1), day(20)};
      record.statements.push_back(s);
      data.person_qids[name] = record.qid;
      if (period == 0) data.index_a.add(record);
      data.index_b.add(std::move(record));
    }
  }

  // Both periods come from one stream, period A first, with independent
  // draws per document.
  Rng rng(config.seed);
  for (std::size_t period = 0; period < 2; ++period) {
    const auto& persons = period == 0 ? a : b;
    const Date start = period == 0 ? Date{year(2012), month(1), day(1)}
                                   : Date{year(2019), month(1), day(1)};
    const std::uint64_t span_days = period == 0 ? 1461 : 1096;
    auto& annotations = period == 0 ? data.annotations_a : data.annotations_b;
    std::vector<Document> docs;
    for (std::size_t d = 0; d < config.n_docs; ++d) {
      const std::size_t r = active_roles[rng.below(active_roles.size())];
      const std::string& person = persons[by_role[r][rng.below(by_role[r].size())]];
      const Label label =
          rng.bernoulli(config.label_fidelity)
              ? roles[r].favored
              : (roles[r].favored == Label::kFake ? Label::kReal : Label::kFake);
      std::vector<Chunk> chunks;
      const std::size_t n_filler = 6 + rng.below(5);
      for (std::size_t k = 0; k < n_filler; ++k) {
        chunks.push_back({kFiller[rng.below(kFiller.size())], std::nullopt});
      }
      Chunk mention{rng.bernoulli(0.7) ? person : surname(person), NeTag::kPer};
      chunks.insert(chunks.begin() + static_cast<std::ptrdiff_t>(rng.below(chunks.size() + 1)),
                    std::move(mention));
      Chunk topic{kTopics[period][r][rng.below(3)], std::nullopt};
      chunks.insert(chunks.begin() + static_cast<std::ptrdiff_t>(rng.below(chunks.size() + 1)),
                    std::move(topic));
      if (rng.bernoulli(0.5)) {
        chunks.push_back({"in", std::nullopt});
        chunks.push_back({kPlaces[rng.below(kPlaces.size())], NeTag::kLoc});
      }
      char id[32];
      std::snprintf(id, sizeof(id), "%s-%05zu", period == 0 ? "a" : "b", d + 1);
      AnnotatedDocument doc =
          render(id, chunks, label, add_days(start, rng.below(span_days)));
      docs.push_back(doc.document);
      annotations.push_back(std::move(doc));
    }
    (period == 0 ? data.period_a : data.period_b) =
        Corpus(period == 0 ? "period-a" : "period-b", std::move(docs));
  }
  return data;
}

}  // namespace chronomask
