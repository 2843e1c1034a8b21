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


// Shared fixtures for the unit, integration and acceptance tests.

#ifndef CHRONOMASK_TESTS_SUPPORT_FIXTURES_H_
#define CHRONOMASK_TESTS_SUPPORT_FIXTURES_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chronomask/annotate.h"
#include "chronomask/corpus.h"
#include "chronomask/masking.h"
#include "chronomask/random.h"
#include "chronomask/wikidata.h"

namespace chronomask::testing {

// Directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);
void write_gzip(const std::filesystem::path& path, const std::string& content);

Document doc(std::string id, std::string text, Label label,
             std::optional<std::string> date = std::nullopt);

struct DumpStatement {
  std::string property;  // "P39" or "P106"
  std::string value;
  std::string start;  // Wikidata time string, empty for none
  std::string end;
  std::string rank = "normal";
};

struct DumpEntity {
  std::string qid;
  std::string label;
  std::vector<std::string> aliases;
  bool human = true;
  std::vector<DumpStatement> statements;
  int sitelinks = 0;
};

// One line in the Wikidata JSON dump layout.
std::string dump_line(const DumpEntity& entity);

// Label-only item, as the dump lists the entities that statements refer to.
std::string value_item_line(const std::string& qid, const std::string& label);

// The worked example: one sentence, its spans, an index in which "Modi"
// resolves to Q22337580, and the expected output of each policy.
AnnotatedDocument worked_example_document();
std::vector<std::string> worked_example_dump_lines();
EntityIndex worked_example_index();
std::vector<std::pair<MaskPolicy, std::string>> worked_example_expected();

// Generated dump of `n` entities wrapped in a JSON array with trailing
// commas. Entity i has qid Q(5000000 + i), label "Given<i> Family<i>",
// alias "G<i> Family<i>", sitelinks i % 97, and one P39 statement with value
// Q(900 + i % 7); every third entity also holds P106 Q33999, and every
// tenth is not human. `malformed` broken lines are inserted.
std::string generated_dump(std::size_t n, std::size_t malformed);

// Random corpus of 1..max_docs documents with up to max_tokens tokens each,
// drawn from a small vocabulary with case and punctuation variants. The
// first document always yields at least two tokens.
Corpus random_corpus(Rng& rng, std::size_t max_docs, std::size_t max_tokens);

struct OracleLmiValue {
  std::uint64_t count_wl = 0;
  std::uint64_t count_w = 0;
  double p_l_given_w = 0;
  double lmi = 0;
};

// Independent LMI evaluation: enumerates every distinct phrase and label and
// recounts both over the whole corpus before applying the formula. Keys are
// (phrase, label); only pairs with count(w, l) > 0 and count(w) >= min_count
// appear. `total` receives |P| and `p_label` p(real), p(fake).
std::map<std::pair<std::string, Label>, OracleLmiValue> brute_force_lmi(
    const Corpus& corpus, std::size_t n, std::uint64_t min_count,
    std::uint64_t* total = nullptr, std::array<double, 2>* p_label = nullptr);

}  // namespace chronomask::testing

#endif  // CHRONOMASK_TESTS_SUPPORT_FIXTURES_H_
