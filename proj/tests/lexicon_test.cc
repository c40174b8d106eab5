//
// Copyright 2026 The ctiaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "ctiaug/lexicon.h"

#include <filesystem>
#include <fstream>

#include "fake_provider.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ctiaug {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;
using testing::FakeProvider;

std::string WriteTemp(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path.string();
}

TEST(SynonymDatabaseTest, TsvLoadLowercasesAndSkipsSelf) {
  const std::string path = WriteTemp(
      "ctiaug_syn.tsv", "# comment\nRun\texecute\nrun\tRUN\nrun\tlaunch\r\n");
  auto db = SynonymDatabase::Load(path);
  ASSERT_TRUE(db.ok()) << db.status();
  EXPECT_THAT(db->Synonyms("RUN"), ElementsAre("execute", "launch"));
  EXPECT_TRUE(db->Contains("run"));
  EXPECT_FALSE(db->Contains("launch"));
  EXPECT_THAT(db->Synonyms("missing"), IsEmpty());
}

TEST(SynonymDatabaseTest, TsvRejectsMalformedLines) {
  auto db = SynonymDatabase::LoadTsv(WriteTemp("ctiaug_bad.tsv", "run execute\n"));
  EXPECT_FALSE(db.ok());
  EXPECT_FALSE(SynonymDatabase::Load("/nonexistent/syn.tsv").ok());
}

TEST(SynonymDatabaseTest, WordNetIndexAndData) {
  const auto dir = std::filesystem::temp_directory_path() / "ctiaug_wordnet";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  // One verb synset with three lemmas, one of them multi-word.
  std::ofstream(dir / "data.verb")
      << "  1 license header line\n"
         "00001000 41 v 03 run 0 execute 0 carry_out 0 000 | gloss\n";
  std::ofstream(dir / "index.verb") << "run v 1 0 1 0 00001000\n"
                                       "execute v 1 0 1 0 00001000\n";
  auto db = SynonymDatabase::Load(dir.string());
  ASSERT_TRUE(db.ok()) << db.status();
  EXPECT_THAT(db->Synonyms("run"), ElementsAre("execute"));
  EXPECT_THAT(db->Synonyms("execute"), ElementsAre("run"));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  EXPECT_EQ(SynonymDatabase::Load(dir.string()).status().code(),
            absl::StatusCode::kNotFound);
}

TEST(FrequencyTableTest, LoadAndUnknownIsZero) {
  auto t = FrequencyTable::Load(WriteTemp("ctiaug_zipf.tsv", "run\t5.5\n"));
  ASSERT_TRUE(t.ok()) << t.status();
  EXPECT_DOUBLE_EQ(t->Zipf("run"), 5.5);
  EXPECT_DOUBLE_EQ(t->Zipf("zzz"), 0.0);
  EXPECT_FALSE(FrequencyTable::Load(WriteTemp("ctiaug_zipf_bad.tsv", "run\tx\n")).ok());
}

TEST(SynonymScoreTest, CosinePlusScaledZipf) {
  SynonymOptions o;
  EXPECT_DOUBLE_EQ(SynonymScore(0.5, 4.0, o), 0.5 + 0.3 * 0.5);
}

TEST(KeywordsTest, SplitsPhrasesAndDeduplicates) {
  EXPECT_THAT(KeywordsFromKeyphrases({"PowerShell script", "script", "run"}),
              ElementsAre("powershell", "script", "run"));
}

// Vectors chosen so cosine to "run" is: execute 1.0, launch 0.6, go 0.0.
std::vector<double> Toy(const std::string& t) {
  if (t == "run" || t == "execute") return {1, 0};
  if (t == "launch") return {0.6, 0.8};
  return {0, 1};
}

TEST(RankSynonymsTest, OrdersByCombinedScore) {
  SynonymDatabase db;
  db.Add("run", "execute");
  db.Add("run", "launch");
  db.Add("run", "go");
  FrequencyTable freq;
  freq.Set("go", 8.0);
  FakeProvider provider(Toy);
  SynonymOptions opts;
  auto ranked = RankSynonyms("run", db, freq, provider, opts);
  ASSERT_TRUE(ranked.ok());
  ASSERT_EQ(ranked->size(), 3u);
  EXPECT_EQ((*ranked)[0].synonym, "execute");
  EXPECT_EQ((*ranked)[1].synonym, "launch");
  EXPECT_NEAR((*ranked)[2].score, 0.3, 1e-12);
  // A heavier frequency weight lifts the common word above the others.
  opts.alpha = 2.0;
  ranked = RankSynonyms("run", db, freq, provider, opts);
  EXPECT_EQ((*ranked)[0].synonym, "go");
}

TEST(ScoreSynonymsTest, PoolsTopPerKeywordAndReportsMissing) {
  SynonymDatabase db;
  db.Add("run", "execute");
  db.Add("run", "launch");
  db.Add("run", "go");
  db.Add("launch", "run");
  FrequencyTable freq;
  FakeProvider provider(Toy);
  SynonymOptions opts;
  opts.per_keyword = 2;
  std::vector<std::string> missing;
  auto out = ScoreSynonyms({"run", "launch", "beacon"}, db, freq, provider,
                           opts, &missing);
  ASSERT_TRUE(out.ok());
  // Keywords themselves are never offered as synonyms.
  EXPECT_THAT(*out, ElementsAre("execute"));
  EXPECT_THAT(missing, ElementsAre("beacon"));
}

}  // namespace
}  // namespace ctiaug
