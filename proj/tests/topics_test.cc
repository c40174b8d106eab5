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

#include "ctiaug/topics.h"

#include "ctiaug/text_util.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ctiaug {
namespace {

using ::testing::Contains;
using ::testing::ElementsAre;
using ::testing::IsEmpty;
using ::testing::Not;

const std::vector<std::string> kTexts = {
    "The malware uses PowerShell to download a payload.",
    "PowerShell scripts download the second stage payload.",
    "Attackers dump credentials from LSASS memory.",
    "Credential dumping targets LSASS memory on the host.",
};

TEST(TermDocumentsTest, UnigramsAndBigramsWithoutStopwords) {
  const TermDocuments docs =
      BuildTermDocuments({"The PowerShell payload"}, DefaultStopwords());
  EXPECT_THAT(docs.vocabulary,
              ElementsAre("payload", "powershell", "powershell payload"));
  EXPECT_EQ(docs.display.at("powershell"), "PowerShell");
  ASSERT_EQ(docs.counts.size(), 1u);
  EXPECT_EQ(docs.counts[0].size(), 3u);
}

TEST(TfIdfTest, RowsAreUnitNormAndRareTermsWeighMore) {
  const TermDocuments docs = BuildTermDocuments(
      {"payload payload loader", "payload stager"}, DefaultStopwords());
  const auto w = TfIdf(docs);
  ASSERT_EQ(w.size(), 2u);
  for (const auto& row : w) {
    double norm = 0.0;
    for (const auto& [t, v] : row) norm += v * v;
    EXPECT_NEAR(norm, 1.0, 1e-12);
  }
  auto idx = [&](const std::string& key) {
    return static_cast<int>(std::find(docs.vocabulary.begin(),
                                      docs.vocabulary.end(), key) -
                            docs.vocabulary.begin());
  };
  // Second document: "payload" occurs in both documents, "stager" in one.
  EXPECT_GT(w[1].at(idx("stager")), w[1].at(idx("payload")));
}

TEST(PseudoCountsTest, ScaledToMaxAndAtLeastOne) {
  const std::vector<std::map<int, double>> weights = {{{0, 1.0}, {1, 0.01}},
                                                      {{2, 0.5}}};
  const auto counts = PseudoCounts(weights, 10.0);
  EXPECT_EQ(counts[0].at(0), 10);
  EXPECT_EQ(counts[0].at(1), 1);
  EXPECT_EQ(counts[1].at(2), 5);
}

TEST(LdaTest, DeterministicForSeed) {
  TopicOptions opts;
  opts.seed = 99;
  opts.iterations = 50;
  auto a = LdaTopics(kTexts, opts, DefaultStopwords());
  auto b = LdaTopics(kTexts, opts, DefaultStopwords());
  ASSERT_TRUE(a.ok());
  ASSERT_TRUE(b.ok());
  EXPECT_EQ(a->topics, b->topics);
  EXPECT_FALSE(a->degenerate);
  ASSERT_EQ(a->topics.size(), 2u);
  for (const Topic& t : a->topics) {
    EXPECT_LE(t.top_terms.size(), 5u);
    EXPECT_THAT(t.top_terms, Not(IsEmpty()));
  }
}

TEST(LdaTest, SingleTopicRanksByCount) {
  TopicOptions opts;
  opts.k_topics = 1;
  opts.top_n = 2;
  auto r = LdaTopics(kTexts, opts, DefaultStopwords());
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->topics.size(), 1u);
  EXPECT_EQ(r->topics[0].top_terms.size(), 2u);
}

TEST(LdaTest, SeparatesDisjointVocabularies) {
  std::vector<std::string> texts;
  for (int i = 0; i < 6; ++i) {
    texts.push_back("ransomware encrypts files ransomware encryption");
    texts.push_back("phishing email attachment phishing lure");
  }
  TopicOptions opts;
  opts.seed = 5;
  opts.top_n = 3;
  auto r = LdaTopics(texts, opts, DefaultStopwords());
  ASSERT_TRUE(r.ok());
  ASSERT_EQ(r->topics.size(), 2u);
  const auto& t0 = r->topics[0].top_terms;
  const auto& t1 = r->topics[1].top_terms;
  const bool zero_is_ransom =
      std::find(t0.begin(), t0.end(), "ransomware") != t0.end();
  EXPECT_THAT(zero_is_ransom ? t0 : t1, Contains("ransomware"));
  EXPECT_THAT(zero_is_ransom ? t1 : t0, Contains("phishing"));
  EXPECT_THAT(zero_is_ransom ? t1 : t0, Not(Contains("ransomware")));
}

TEST(LdaTest, AllStopwordsFallsBackToRawFrequency) {
  auto r = LdaTopics({"it is what it is", "it was"}, {}, DefaultStopwords());
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->degenerate);
  ASSERT_EQ(r->topics.size(), 1u);
  EXPECT_EQ(r->topics[0].top_terms.front(), "it");
}

TEST(LdaTest, InvalidInputs) {
  EXPECT_FALSE(LdaTopics({}, {}, DefaultStopwords()).ok());
  TopicOptions bad;
  bad.k_topics = 0;
  EXPECT_FALSE(LdaTopics(kTexts, bad, DefaultStopwords()).ok());
  EXPECT_FALSE(LdaTopics({"... !!!"}, {}, DefaultStopwords()).ok());
}

}  // namespace
}  // namespace ctiaug
