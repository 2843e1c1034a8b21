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


// Seeded two-period fake-news corpus for exercising the masking pipeline.
//
// Each period-A person has a period-B counterpart holding the same role.
// Labels depend on the role, so in period A a person's name predicts the
// label about 90% of the time. Period B talks about the counterparts
// instead, so the names seen during training never appear there. Documents
// also carry a role-specific topic word that differs between periods, and an
// optional place name shared by both periods that carries no label signal.
//
// Both periods draw roles, labels, filler and places from the same
// distributions, so after WikiD masking they share one replacement vocabulary
// with the same role-conditional label distribution.

#ifndef CHRONOMASK_SYNTH_H_
#define CHRONOMASK_SYNTH_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chronomask/annotate.h"
#include "chronomask/corpus.h"
#include "chronomask/wikidata.h"

namespace chronomask {

struct SynthConfig {
  std::uint64_t seed = 1;
  std::size_t n_docs = 1000;  // per period
  // Full names; period_b_persons[i] is the counterpart of period_a_persons[i].
  std::vector<std::string> period_a_persons;
  std::vector<std::string> period_b_persons;
  // Person name -> role QID. Every role QID must be one of synth_roles().
  std::map<std::string, std::string> role_map;
  double label_fidelity = 0.9;
};

struct SynthRole {
  std::string qid;
  RoleProperty property;
  std::string label;
  Label favored;
};

// Q11696, Q22337580, Q30185 (P39) and Q33999 (P106).
const std::vector<SynthRole>& synth_roles();

// Twenty persons per period, five per role, with fictional names.
SynthConfig default_synth_config(std::uint64_t seed, std::size_t n_docs);

struct SynthData {
  Corpus period_a;  // named "period-a", dated 2012-2015
  Corpus period_b;  // named "period-b", dated 2019-2021
  std::vector<AnnotatedDocument> annotations_a;
  std::vector<AnnotatedDocument> annotations_b;
  // Snapshot 2016-01-04 with the period-A persons; snapshot 2020-12-28 with
  // both periods.
  EntityIndex index_a;
  EntityIndex index_b;
  // Person name -> synthetic QID.
  std::map<std::string, std::string> person_qids;
};

// Throws UsageError when n_docs < 100, the person lists are empty or of
// different sizes, a person lacks a role, counterparts differ in role, or a
// name has fewer than two tokens. Throws Error when a name (or surname)
// appears in both periods.
SynthData synth_diachronic_corpus(const SynthConfig& config);

}  // namespace chronomask

#endif  // CHRONOMASK_SYNTH_H_
