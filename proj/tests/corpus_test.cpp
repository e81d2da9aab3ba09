// Copyright 2026 The Namesake Authors
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

#include "namesake/corpus.hpp"

#include <filesystem>
#include <functional>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "namesake/error.hpp"

namespace namesake {
namespace {

CitationRecord Record(std::string id, std::vector<NameParts> names) {
  CitationRecord r;
  r.id = std::move(id);
  r.title = "untitled";
  for (auto& n : names) r.authors.push_back({std::move(n), std::nullopt, std::nullopt});
  return r;
}

Errc CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return Errc::kUsage;
}

TEST(NormalizeNameTest, AppliesAllRules) {
  const NameParts n = NormalizeName("Smith", "John", "Albert", "Jr.");
  EXPECT_EQ(n.last, "smith");
  EXPECT_EQ(n.first, "john");
  EXPECT_EQ(n.middle_initial, 'a');
  EXPECT_EQ(n.suffix, "jr");
}

TEST(NormalizeNameTest, FoldsCaseAndDiacritics) {
  const NameParts n = NormalizeName("GARCÍA", "M.", "", "");
  EXPECT_EQ(n.last, "garcia");
  EXPECT_EQ(n.first, "m");
  EXPECT_FALSE(n.middle_initial.has_value());
  EXPECT_FALSE(n.suffix.has_value());
}

TEST(NormalizeNameTest, BlankLastNameIsRejected) {
  EXPECT_EQ(CodeOf([] { NormalizeName("  ", "X", "", ""); }), Errc::kEmptyLastName);
  EXPECT_EQ(CodeOf([] { NormalizeName("--", "X", "", ""); }), Errc::kEmptyLastName);
}

TEST(NormalizeNameTest, HyphenatedLastNamesAreJoined) {
  EXPECT_EQ(NormalizeName("García-López", "Ana", "", "").last, "garcialopez");
}

TEST(NormalizeNameTest, SuffixCanonicalization) {
  EXPECT_EQ(NormalizeName("x", "", "", "Junior").suffix, "jr");
  EXPECT_EQ(NormalizeName("x", "", "", "SR").suffix, "sr");
  EXPECT_EQ(NormalizeName("x", "", "", "III").suffix, "iii");
  EXPECT_EQ(NormalizeName("x", "", "", "3rd").suffix, "iii");
  EXPECT_EQ(NormalizeName("x", "", "", "IV").suffix, "iv");
  EXPECT_FALSE(NormalizeName("x", "", "", "PhD").suffix.has_value());
}

TEST(NormalizeNameTest, IsIdempotentOnRandomInput) {
  const std::vector<std::string> pieces = {"Á", "b", "-", " ", "'", "ß", "Z", ".", "é", "Ø",
                                           "q", "7", "王", "Jr", "ii", "ñ"};
  std::mt19937_64 rng(11);
  auto random_string = [&] {
    std::string s;
    const std::size_t len = rng() % 6;
    for (std::size_t i = 0; i < len; ++i) s += pieces[rng() % pieces.size()];
    return s;
  };
  for (int trial = 0; trial < 2000; ++trial) {
    const std::string last = "K" + random_string();
    const NameParts once =
        NormalizeName(last, random_string(), random_string(), random_string());
    const NameParts twice = NormalizeName(
        once.last, once.first, once.middle_initial ? std::string(1, *once.middle_initial) : "",
        once.suffix.value_or(""));
    EXPECT_EQ(once, twice) << "input last='" << last << "'";
  }
}

TEST(BlockKeyTest, LastNameAndFirstInitial) {
  EXPECT_EQ(BlockKey({"smith", "john", std::nullopt, std::nullopt}), "smith_j");
  EXPECT_EQ(BlockKey({"smith", "", std::nullopt, std::nullopt}), "smith_");
  EXPECT_EQ(BlockKey(NormalizeName("O'Brien", "Kate", "", "")), "obrien_k");
}

TEST(BlockKeyTest, MultiByteInitialIsKeptWhole) {
  EXPECT_EQ(BlockKey(NormalizeName("Li", "王伟", "", "")), "li_王");
}

TEST(RefIdTest, RoundTripsThroughString) {
  const RefId id{"pmid#123", 4};
  EXPECT_EQ(id.ToString(), "pmid#123#4");
  EXPECT_EQ(RefId::Parse(id.ToString()), id);
  EXPECT_THROW(RefId::Parse("nohash"), Error);
  EXPECT_THROW(RefId::Parse("c#x"), Error);
}

TEST(BuildBlocksTest, CountsReferencesPerKey) {
  const NameParts smith = NormalizeName("Smith", "J.", "", "");
  const NameParts doe = NormalizeName("Doe", "A.", "", "");
  const std::vector<CitationRecord> records = {
      Record("r1", {smith}), Record("r2", {smith}), Record("r3", {doe})};
  const std::vector<Block> blocks = BuildBlocks(records);
  ASSERT_EQ(blocks.size(), 2u);
  EXPECT_EQ(blocks[0].key, "doe_a");
  EXPECT_EQ(blocks[0].refs.size(), 1u);
  EXPECT_EQ(blocks[0].popularity_bin, 0);
  EXPECT_EQ(blocks[1].key, "smith_j");
  EXPECT_EQ(blocks[1].refs.size(), 2u);
  EXPECT_EQ(blocks[1].popularity_bin, 0);
}

TEST(BuildBlocksTest, PopularityBins) {
  const PopularityThresholds t;
  EXPECT_EQ(PopularityBin(5, t), 0);
  EXPECT_EQ(PopularityBin(6, t), 1);
  EXPECT_EQ(PopularityBin(50, t), 1);
  EXPECT_EQ(PopularityBin(51, t), 2);

  std::vector<CitationRecord> records;
  for (int i = 0; i < 60; ++i) {
    records.push_back(Record("c" + std::to_string(i), {NormalizeName("Lee", "Kim", "", "")}));
  }
  const auto blocks = BuildBlocks(records);
  ASSERT_EQ(blocks.size(), 1u);
  EXPECT_EQ(blocks[0].popularity_bin, 2);
}

TEST(BuildBlocksTest, DuplicateCitationIdIsRejected) {
  const NameParts n = NormalizeName("Smith", "J", "", "");
  EXPECT_EQ(CodeOf([&] { BuildBlocks({Record("x", {n}), Record("x", {n})}); }),
            Errc::kDuplicateCitationId);
}

TEST(BuildBlocksTest, PartitionAndOrderingInvariants) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> lasts = {"smith", "doe", "lee", "kim"};
  const std::vector<std::string> firsts = {"john", "jane", "ann", ""};
  std::vector<CitationRecord> records;
  for (int i = 0; i < 200; ++i) {
    std::vector<NameParts> names;
    const std::size_t k = 1 + rng() % 4;
    for (std::size_t a = 0; a < k; ++a) {
      names.push_back(NormalizeName(lasts[rng() % 4], firsts[rng() % 4], "", ""));
    }
    records.push_back(Record("id" + std::to_string(rng()), names));
  }
  const Corpus corpus(records, {});
  std::set<std::size_t> seen;
  for (const Block& b : corpus.blocks()) {
    EXPECT_TRUE(std::is_sorted(b.refs.begin(), b.refs.end()));
    for (std::size_t i = 1; i < b.refs.size(); ++i) {
      EXPECT_LT(corpus.references()[b.refs[i - 1]].ref_id, corpus.references()[b.refs[i]].ref_id);
    }
    for (std::size_t r : b.refs) {
      EXPECT_TRUE(seen.insert(r).second);
      EXPECT_EQ(corpus.references()[r].block_key, b.key);
      EXPECT_LT(corpus.references()[r].ref_id.position,
                corpus.record_of(corpus.references()[r]).authors.size());
    }
    EXPECT_EQ(b.popularity_bin, PopularityBin(b.refs.size(), corpus.thresholds()));
  }
  EXPECT_EQ(seen.size(), corpus.references().size());
  for (std::size_t i = 1; i < corpus.blocks().size(); ++i) {
    EXPECT_LT(corpus.blocks()[i - 1].key, corpus.blocks()[i].key);
  }
}

TEST(JsonlTest, ParsesRecordsAndNormalizes) {
  std::istringstream in(
      R"({"id":"p1","title":"A Study","journal":"Nature","authors":[{"last":"Smith","first":"John","middle":"Albert","suffix":"Jr.","email":"J@X.org"}],"subjects":["Neoplasms","neoplasms"," Mice "],"language":"eng","year":2001,"extra":1})"
      "\n\n"
      R"({"id":"p2","authors":[{"last":"Doe"}]})"
      "\n");
  const auto records = ReadCitationsJsonl(in);
  ASSERT_EQ(records.size(), 2u);
  EXPECT_EQ(records[0].authors[0].name.last, "smith");
  EXPECT_EQ(records[0].authors[0].name.suffix, "jr");
  EXPECT_EQ(records[0].authors[0].email, "J@X.org");
  EXPECT_EQ(records[0].subjects, (std::vector<std::string>{"neoplasms", "mice"}));
  EXPECT_EQ(records[0].year, 2001);
  EXPECT_FALSE(records[1].journal.has_value());
  EXPECT_FALSE(records[1].language.has_value());
  EXPECT_EQ(records[1].title, "");
}

TEST(JsonlTest, ReportsLineNumbers) {
  std::istringstream in("{\"id\":\"a\",\"authors\":[{\"last\":\"X\"}]}\n{\"id\":\"b\",\"authors\":[]}\n");
  try {
    ReadCitationsJsonl(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kInvalidInput);
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos);
  }
  std::istringstream bad("{not json}\n");
  EXPECT_THROW(ReadCitationsJsonl(bad), Error);
  std::istringstream empty_last("{\"id\":\"a\",\"authors\":[{\"last\":\" \"}]}\n");
  EXPECT_EQ(CodeOf([&] { ReadCitationsJsonl(empty_last); }), Errc::kEmptyLastName);
}

TEST(CorpusStoreTest, SaveLoadRoundTrip) {
  std::istringstream in(
      R"({"id":"p1","title":"T","authors":[{"last":"Smith","first":"J","affiliation":"MIT"}],"subjects":["x"]})"
      "\n"
      R"({"id":"p2","title":"U","authors":[{"last":"Smith","first":"J"},{"last":"Núñez","first":"Ana","middle":"b"}]})"
      "\n");
  const Corpus corpus(ReadCitationsJsonl(in), {3, 9});
  const auto path = (std::filesystem::temp_directory_path() / "namesake_corpus_test.json").string();
  SaveCorpus(corpus, path);
  const Corpus loaded = LoadCorpus(path);
  EXPECT_EQ(loaded.records(), corpus.records());
  EXPECT_EQ(loaded.thresholds(), corpus.thresholds());
  ASSERT_EQ(loaded.blocks().size(), corpus.blocks().size());
  for (std::size_t i = 0; i < loaded.blocks().size(); ++i) {
    EXPECT_EQ(loaded.blocks()[i].key, corpus.blocks()[i].key);
    EXPECT_EQ(loaded.blocks()[i].refs, corpus.blocks()[i].refs);
  }
  std::filesystem::remove(path);
}

TEST(CorpusStoreTest, RejectsUnknownFormatVersion) {
  const auto path = (std::filesystem::temp_directory_path() / "namesake_corpus_v9.json").string();
  std::ofstream(path) << R"({"format_version":9,"records":[]})";
  EXPECT_EQ(CodeOf([&] { LoadCorpus(path); }), Errc::kFormatVersionUnsupported);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace namesake
