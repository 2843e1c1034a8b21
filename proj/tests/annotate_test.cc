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


#include <sstream>

#include <gtest/gtest.h>

#include "chronomask/annotate.h"
#include "chronomask/error.h"
#include "chronomask/random.h"
#include "chronomask/text.h"
#include "fixtures.h"

namespace chronomask {
namespace {

using testing::doc;

Corpus small_corpus() {
  return Corpus("c", {doc("d1", "Barack Obama won", Label::kReal),
                      doc("d2", "Caf\xC3\xA9 Paris opened in Lyon", Label::kFake)});
}

AnnotationSet read(const Corpus& c, const std::string& text) {
  std::istringstream in(text);
  return read_annotations(c, in, "a.jsonl");
}

std::string error_of(const Corpus& c, const std::string& text) {
  try {
    read(c, text);
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

TEST(TagTest, NamesRoundTrip) {
  for (NeTag t : {NeTag::kPer, NeTag::kLoc, NeTag::kOrg, NeTag::kMisc}) {
    EXPECT_EQ(parse_tag(tag_name(t)), t);
  }
  EXPECT_FALSE(parse_tag("per"));
  EXPECT_FALSE(parse_tag("GPE"));
}

TEST(LoadAnnotationsTest, EmptyFileGivesEmptySpans) {
  const AnnotationSet set = read(small_corpus(), "");
  ASSERT_EQ(set.documents.size(), 2u);
  EXPECT_TRUE(set.documents[0].spans.empty());
  EXPECT_TRUE(set.documents[1].spans.empty());
}

TEST(LoadAnnotationsTest, AcceptsCheckedSpan) {
  const AnnotationSet set = read(
      small_corpus(),
      "{\"doc_id\":\"d1\",\"spans\":[{\"start\":0,\"end\":12,\"tag\":\"PER\",\"text\":\"Barack Obama\"}]}\n");
  ASSERT_EQ(set.documents[0].spans.size(), 1u);
  EXPECT_EQ(set.documents[0].spans[0], (NeSpan{0, 12, NeTag::kPer, "Barack Obama"}));
  EXPECT_TRUE(set.documents[1].spans.empty());
}

TEST(LoadAnnotationsTest, OffsetsCountCodePoints) {
  // "Lyon" starts at code point 21 but byte 22.
  const AnnotationSet set = read(
      small_corpus(),
      "{\"doc_id\":\"d2\",\"spans\":[{\"start\":0,\"end\":10,\"tag\":\"ORG\",\"text\":\"Caf\xC3\xA9 Paris\"},"
      "{\"start\":21,\"end\":25,\"tag\":\"LOC\",\"text\":\"Lyon\"}]}\n");
  ASSERT_EQ(set.documents[1].spans.size(), 2u);
  EXPECT_EQ(set.documents[1].spans[1].surface, "Lyon");
}

TEST(LoadAnnotationsTest, OverlapKeepsLongestThenLeftmost) {
  const Corpus c("c", {doc("d", "abcdefghijklmnop", Label::kReal)});
  // (0,8) vs (4,12): equal length, leftmost wins.
  AnnotationSet set = read(
      c, "{\"doc_id\":\"d\",\"spans\":[{\"start\":0,\"end\":8,\"tag\":\"PER\",\"text\":\"abcdefgh\"},"
         "{\"start\":4,\"end\":12,\"tag\":\"LOC\",\"text\":\"efghijkl\"}]}\n");
  ASSERT_EQ(set.documents[0].spans.size(), 1u);
  EXPECT_EQ(set.documents[0].spans[0].start, 0u);
  EXPECT_EQ(set.discarded_overlaps, 1u);
  // (0,8) vs (4,13): the longer one wins.
  set = read(c, "{\"doc_id\":\"d\",\"spans\":[{\"start\":0,\"end\":8,\"tag\":\"PER\",\"text\":\"abcdefgh\"},"
                "{\"start\":4,\"end\":13,\"tag\":\"LOC\",\"text\":\"efghijklm\"}]}\n");
  ASSERT_EQ(set.documents[0].spans.size(), 1u);
  EXPECT_EQ(set.documents[0].spans[0].start, 4u);
}

TEST(ResolveOverlapsTest, SurvivorsAreDisjointAndSorted) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<NeSpan> spans;
    const std::size_t n = rng.below(12);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t start = rng.below(40);
      spans.push_back({start, start + 1 + rng.below(8), NeTag::kMisc, ""});
    }
    std::size_t discarded = 0;
    const auto kept = resolve_overlaps(spans, &discarded);
    ASSERT_EQ(kept.size() + discarded, spans.size());
    for (std::size_t i = 1; i < kept.size(); ++i) {
      ASSERT_LE(kept[i - 1].end, kept[i].start);
    }
    // Every input span survives or overlaps a survivor at least as long.
    for (const auto& s : spans) {
      bool covered = false;
      for (const auto& k : kept) {
        covered |= k.start < s.end && s.start < k.end &&
                   k.end - k.start >= s.end - s.start;
      }
      ASSERT_TRUE(covered);
    }
  }
}

TEST(LoadAnnotationsTest, Errors) {
  const Corpus c = small_corpus();
  std::string e = error_of(
      c, "{\"doc_id\":\"d1\",\"spans\":[{\"start\":0,\"end\":40,\"tag\":\"PER\",\"text\":\"x\"}]}\n");
  EXPECT_NE(e.find("d1"), std::string::npos) << e;
  e = error_of(c, "{\"doc_id\":\"d1\",\"spans\":[{\"start\":0,\"end\":6,\"tag\":\"PER\",\"text\":\"Barack Obama\"}]}\n");
  EXPECT_NE(e.find("d1"), std::string::npos) << e;
  e = error_of(c, "{\"doc_id\":\"zz\",\"spans\":[]}\n");
  EXPECT_NE(e.find("zz"), std::string::npos) << e;
  e = error_of(c, "{\"doc_id\":\"d1\",\"spans\":[{\"start\":0,\"end\":6,\"tag\":\"GPE\",\"text\":\"Barack\"}]}\n");
  EXPECT_NE(e.find("GPE"), std::string::npos) << e;
  e = error_of(c, "{\"doc_id\":\"d1\",\"spans\":[]}\n{\"doc_id\":\"d1\",\"spans\":[]}\n");
  EXPECT_NE(e.find("d1"), std::string::npos) << e;
  EXPECT_NE(error_of(c, "{\"doc_id\":\"d1\",\"spans\":[{\"start\":3,\"end\":3,\"tag\":\"PER\",\"text\":\"\"}]}\n"), "");
  EXPECT_NE(error_of(c, "garbage\n"), "");
}

TEST(LoadAnnotationsTest, WriteThenReadRoundTrip) {
  const Corpus c = small_corpus();
  const AnnotationSet set = read(
      c, "{\"doc_id\":\"d2\",\"spans\":[{\"start\":0,\"end\":10,\"tag\":\"ORG\",\"text\":\"Caf\xC3\xA9 Paris\"},"
         "{\"start\":21,\"end\":25,\"tag\":\"LOC\",\"text\":\"Lyon\"}]}\n"
         "{\"doc_id\":\"d1\",\"spans\":[{\"start\":0,\"end\":12,\"tag\":\"PER\",\"text\":\"Barack Obama\"}]}\n");
  std::ostringstream out;
  write_annotations(set.documents, out);
  const AnnotationSet back = read(c, out.str());
  ASSERT_EQ(back.documents.size(), set.documents.size());
  for (std::size_t i = 0; i < set.documents.size(); ++i) {
    EXPECT_EQ(back.documents[i].spans, set.documents[i].spans);
  }
  std::ostringstream again;
  write_annotations(back.documents, again);
  EXPECT_EQ(again.str(), out.str());
}

TEST(LoadAnnotationsTest, FileRoundTripAndCorpusOf) {
  testing::TempDir dir;
  const Corpus c = small_corpus();
  auto docs = unannotated(c);
  docs[0].spans = {{0, 6, NeTag::kPer, "Barack"}};
  save_annotations(docs, dir / "a.jsonl");
  const AnnotationSet back = load_annotations(c, dir / "a.jsonl");
  EXPECT_EQ(back.documents[0].spans, docs[0].spans);
  const Corpus rebuilt = corpus_of(back.documents, "again");
  EXPECT_EQ(rebuilt.documents(), c.documents());
  EXPECT_THROW(load_annotations(c, dir / "missing.jsonl"), Error);
}

TEST(ValidateSpansTest, RejectsUnsortedOrOverlapping) {
  const Document d = doc("d", "abcdefgh", Label::kReal);
  EXPECT_NO_THROW(validate_spans(d, {{0, 2, NeTag::kPer, "ab"}, {2, 4, NeTag::kLoc, "cd"}}));
  EXPECT_THROW(validate_spans(d, {{2, 4, NeTag::kLoc, "cd"}, {0, 2, NeTag::kPer, "ab"}}), Error);
  EXPECT_THROW(validate_spans(d, {{0, 3, NeTag::kPer, "abc"}, {2, 4, NeTag::kLoc, "cd"}}), Error);
}

TEST(GazetteerTest, EmptyGazetteerTagsNothing) {
  EXPECT_TRUE(tag_with_gazetteer(doc("d", "Barack Obama", Label::kReal), Gazetteer()).spans.empty());
}

TEST(GazetteerTest, FindsNameBeforePunctuation) {
  Gazetteer g;
  g.add("barack obama", NeTag::kPer);
  const auto a = tag_with_gazetteer(doc("d", "I met Barack Obama.", Label::kReal), g);
  ASSERT_EQ(a.spans.size(), 1u);
  EXPECT_EQ(a.spans[0], (NeSpan{6, 18, NeTag::kPer, "Barack Obama"}));
}

TEST(GazetteerTest, LongestMatchWins) {
  Gazetteer g;
  g.add("new york", NeTag::kLoc);
  g.add("new york times", NeTag::kOrg);
  const auto a = tag_with_gazetteer(doc("d", "the New York Times said", Label::kReal), g);
  ASSERT_EQ(a.spans.size(), 1u);
  EXPECT_EQ(a.spans[0], (NeSpan{4, 18, NeTag::kOrg, "New York Times"}));
  const auto b = tag_with_gazetteer(doc("d", "in new  york today", Label::kReal), g);
  ASSERT_EQ(b.spans.size(), 1u);
  EXPECT_EQ(b.spans[0].surface, "new  york");
  EXPECT_EQ(b.spans[0].tag, NeTag::kLoc);
}

TEST(GazetteerTest, MatchesOnTokenBoundariesOnly) {
  Gazetteer g;
  g.add("obama", NeTag::kPer);
  EXPECT_TRUE(tag_with_gazetteer(doc("d", "obamacare", Label::kReal), g).spans.empty());
  EXPECT_EQ(tag_with_gazetteer(doc("d", "(Obama)", Label::kReal), g).spans.size(), 1u);
}

TEST(GazetteerTest, OffsetsAreCodePoints) {
  Gazetteer g;
  g.add("lyon", NeTag::kLoc);
  const auto a = tag_with_gazetteer(doc("d", "caf\xC3\xA9 Lyon", Label::kReal), g);
  ASSERT_EQ(a.spans.size(), 1u);
  EXPECT_EQ(a.spans[0].start, 5u);
  EXPECT_EQ(a.spans[0].end, 9u);
}

TEST(GazetteerTest, LoadsTsvWithComments) {
  std::istringstream in("# people\nBarack Obama\tPER\n\nnew york\tLOC\nNew York\tORG\n");
  const Gazetteer g = Gazetteer::read(in, "g.tsv");
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.find("new york"), NeTag::kOrg);
  EXPECT_EQ(g.find("barack obama"), NeTag::kPer);
  EXPECT_EQ(g.max_tokens(), 2u);
  std::istringstream bad("Obama\tPERSON\n");
  EXPECT_THROW(Gazetteer::read(bad, "g.tsv"), Error);
  std::istringstream no_tab("Obama PER\n");
  EXPECT_THROW(Gazetteer::read(no_tab, "g.tsv"), Error);
}

TEST(GazetteerTest, OutputSatisfiesInvariantsOnRandomInput) {
  Rng rng(99);
  const std::vector<std::string> words = {"new", "york", "times", "Obama", "barack",
                                          "the", "U.S.", "caf\xC3\xA9", "-", "a"};
  for (int trial = 0; trial < 300; ++trial) {
    Gazetteer g;
    const std::size_t entries = rng.below(6);
    for (std::size_t e = 0; e < entries; ++e) {
      std::string name;
      const std::size_t len = 1 + rng.below(3);
      for (std::size_t k = 0; k < len; ++k) {
        if (k) name += ' ';
        name += words[rng.below(words.size())];
      }
      g.add(name, static_cast<NeTag>(rng.below(4)));
    }
    std::string text;
    const std::size_t len = rng.below(15);
    for (std::size_t k = 0; k < len; ++k) {
      text += words[rng.below(words.size())];
      text += rng.below(3) == 0 ? ", " : " ";
    }
    const Document d = doc("d", text, Label::kReal);
    const AnnotatedDocument a = tag_with_gazetteer(d, g);
    ASSERT_NO_THROW(validate_spans(d, a.spans)) << text;
    for (const auto& s : a.spans) {
      ASSERT_EQ(g.find(normalize_name(s.surface)), s.tag);
    }
    ASSERT_EQ(tag_with_gazetteer(d, g).spans, a.spans);
  }
}

}  // namespace
}  // namespace chronomask
