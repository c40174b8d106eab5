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

#include "ctiaug/quality.h"

#include <cmath>
#include <random>

#include "absl/strings/escaping.h"
#include "absl/strings/str_split.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace ctiaug {
namespace {

using ::testing::HasSubstr;

struct Labeled {
  std::vector<EmbeddingVector> vecs;
  std::vector<oracle::Point> points;
  std::vector<std::string> labels;
};

Labeled RandomBlobs(int seed, int classes, int per_class, int dim) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  Labeled out;
  for (int c = 0; c < classes; ++c) {
    std::vector<double> centre(dim);
    for (double& x : centre) x = 3.0 * noise(gen);
    for (int i = 0; i < per_class + c; ++i) {
      std::vector<double> p(dim);
      for (int k = 0; k < dim; ++k) p[k] = centre[k] + noise(gen);
      out.points.push_back(p);
      out.vecs.emplace_back(p);
      out.labels.push_back("T" + std::to_string(c));
    }
  }
  return out;
}

TEST(StrengthTest, Thresholds) {
  EXPECT_EQ(ClassifyStrength(0.17, 1.99, 0.10), Strength::kStrong);
  EXPECT_EQ(ClassifyStrength(0.17, 2.0, 0.10), Strength::kIntermediate);
  EXPECT_EQ(ClassifyStrength(0.04, 7.0, 0.03), Strength::kWeak);
  EXPECT_EQ(ClassifyStrength(0.05, 7.0, 0.03), Strength::kIntermediate);
  EXPECT_EQ(ClassifyStrength(-1.0, INFINITY, 0.0), Strength::kWeak);
  EXPECT_EQ(StrengthName(Strength::kIntermediate), "intermediate");
}

class OracleAgreement : public ::testing::TestWithParam<int> {};

TEST_P(OracleAgreement, SilhouetteAndDaviesBouldin) {
  const Labeled d = RandomBlobs(GetParam(), 4, 6, 5);
  auto sil = SilhouettePerClass(d.vecs, d.labels);
  ASSERT_TRUE(sil.ok()) << sil.status();
  const auto want_sil = oracle::Silhouette(d.points, d.labels);
  ASSERT_EQ(sil->size(), want_sil.size());
  for (const auto& [label, v] : want_sil) EXPECT_NEAR(sil->at(label), v, 1e-10);

  auto db = DaviesBouldin(d.vecs, d.labels);
  ASSERT_TRUE(db.ok());
  const auto want_db = oracle::DaviesBouldinTerms(d.points, d.labels);
  double mean = 0.0;
  for (const auto& [label, v] : want_db) {
    EXPECT_NEAR(db->per_class.at(label), v, 1e-10);
    mean += v / want_db.size();
  }
  EXPECT_NEAR(db->index, mean, 1e-10);
}

TEST_P(OracleAgreement, CentroidCosine) {
  const Labeled a = RandomBlobs(GetParam(), 1, 7, 6);
  const Labeled b = RandomBlobs(GetParam() + 100, 1, 5, 6);
  auto got = OrigSynthCosineDistance(a.vecs, b.vecs, CosineMode::kCentroid);
  ASSERT_TRUE(got.ok());
  EXPECT_NEAR(*got, oracle::CosineToCentroid(a.points, b.points), 1e-10);
}

INSTANTIATE_TEST_SUITE_P(Seeds, OracleAgreement, ::testing::Values(1, 2, 3, 4));

TEST(SilhouetteTest, SingletonClassScoresZeroAndNeedsTwoClasses) {
  const std::vector<EmbeddingVector> v = {EmbeddingVector({0.0}), EmbeddingVector({1.0}),
                                          EmbeddingVector({5.0})};
  const std::vector<std::string> l = {"a", "a", "b"};
  auto s = SilhouettePerClass(v, l);
  ASSERT_TRUE(s.ok());
  EXPECT_DOUBLE_EQ(s->at("b"), 0.0);
  // a: point 0 (a=1, b=5) -> 0.8, point 1 (a=1, b=4) -> 0.75.
  EXPECT_NEAR(s->at("a"), 0.775, 1e-12);
  const std::vector<std::string> one = {"a", "a", "a"};
  EXPECT_FALSE(SilhouettePerClass(v, one).ok());
}

TEST(DaviesBouldinTest, CoincidentCentroidsAreInfinite) {
  const std::vector<EmbeddingVector> v = {EmbeddingVector({-1.0}), EmbeddingVector({1.0}),
                                          EmbeddingVector({-2.0}), EmbeddingVector({2.0})};
  const std::vector<std::string> l = {"a", "a", "b", "b"};
  auto db = DaviesBouldin(v, l);
  ASSERT_TRUE(db.ok());
  EXPECT_TRUE(std::isinf(db->per_class.at("a")));
}

TEST(CosineTest, PairwiseMode) {
  const std::vector<EmbeddingVector> o = {EmbeddingVector({1.0, 0.0}),
                                          EmbeddingVector({0.0, 1.0})};
  const std::vector<EmbeddingVector> s = {EmbeddingVector({1.0, 0.0})};
  EXPECT_NEAR(*OrigSynthCosineDistance(o, s, CosineMode::kPairwise), 0.5, 1e-12);
  EXPECT_NEAR(*OrigSynthCosineDistance(o, s, CosineMode::kCentroid),
              1.0 - std::sqrt(0.5), 1e-12);
  EXPECT_FALSE(OrigSynthCosineDistance(o, {}).ok());
}

TEST(BleuTest, HandComputed) {
  const std::vector<std::string> ref = {"the", "cat", "ran"};
  EXPECT_NEAR(SentenceBleu({"the", "cat", "ran"}, {ref}), 1.0, 1e-12);
  // p1 = 2/3, p2 = 2/3, p3 = 1/2, p4 = 1/1 (smoothed); no brevity penalty.
  EXPECT_NEAR(SentenceBleu({"the", "cat", "sat"}, {ref}),
              std::pow(2.0 / 9.0, 0.25), 1e-12);
  EXPECT_DOUBLE_EQ(SentenceBleu({"dog"}, {ref}), 0.0);
  // Brevity: hypothesis of 2 against reference of 3 -> exp(1 - 3/2).
  EXPECT_NEAR(SentenceBleu({"the", "cat"}, {ref}, 1), std::exp(1.0 - 1.5), 1e-12);
}

TEST(SelfBleuTest, MatchesOracle) {
  const std::vector<std::string> texts = {
      "The adversary used PowerShell to download the payload.",
      "PowerShell was used to download a second stage payload.",
      "Credentials were dumped from LSASS memory.",
      "The adversary dumped credentials with Mimikatz."};
  for (int n : {1, 2, 4}) {
    auto got = SelfBleu(texts, n);
    ASSERT_TRUE(got.has_value());
    EXPECT_NEAR(*got, oracle::SelfBleu(texts, n), 1e-12) << n;
  }
  EXPECT_FALSE(SelfBleu({"only one"}).has_value());
  EXPECT_NEAR(*SelfBleu({"same text here", "same text here"}), 1.0, 1e-12);
}

std::vector<LabeledSentence> SmallManifest() {
  return {{"alpha one", "T1", Split::kTrain},    {"alpha two", "T1", Split::kTrain},
          {"beta one", "T2", Split::kTrain},     {"beta two", "T2", Split::kTrain},
          {"alpha three", "T1", Split::kSynthetic}, {"alpha four", "T1", Split::kSynthetic},
          {"beta test", "T2", Split::kTest}};
}

EmbeddingSet SmallEmbeddings() {
  EmbeddingSet set("m");
  auto put = [&](const std::string& t, double x, double y) {
    ASSERT_TRUE(set.Insert(t, EmbeddingVector({x, y})).ok());
  };
  put("alpha one", 1, 0.1);
  put("alpha two", 1, 0.2);
  put("alpha three", 1, 0.15);
  put("alpha four", 1, 0.3);
  put("beta one", 0.1, 1);
  put("beta two", 0.2, 1);
  return set;
}

TEST(EvaluateTest, PerClassRowsForAugmentedClasses) {
  auto rows = EvaluateQuality(SmallManifest(), SmallEmbeddings());
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 1u);
  const ClassQuality& q = rows->front();
  EXPECT_EQ(q.technique_id, "T1");
  EXPECT_EQ(q.n_original, 2);
  EXPECT_EQ(q.n_synthetic, 2);
  EXPECT_GT(q.silhouette, 0.5);
  ASSERT_TRUE(q.self_bleu.has_value());

  const std::string jsonl = QualityJsonl(*rows);
  EXPECT_THAT(jsonl, HasSubstr("\"technique_id\":\"T1\""));
  const std::string csv = DiversityCsv(*rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "technique_id,cosine_distance,self_bleu,strength");
}

TEST(EvaluateTest, NoSyntheticRowsGivesEmptyResult) {
  std::vector<LabeledSentence> m = SmallManifest();
  m.erase(m.begin() + 4, m.begin() + 6);
  auto rows = EvaluateQuality(m, SmallEmbeddings());
  ASSERT_TRUE(rows.ok());
  EXPECT_TRUE(rows->empty());
}

TEST(EvaluateTest, MissingEmbeddingIsAnError) {
  std::vector<LabeledSentence> m = SmallManifest();
  m.push_back({"gamma", "T1", Split::kSynthetic});
  EXPECT_FALSE(EvaluateQuality(m, SmallEmbeddings()).ok());
}

TEST(ProjectionTest, HeaderAndDecodableRows) {
  auto text = ProjectionFile(SmallManifest(), SmallEmbeddings());
  ASSERT_TRUE(text.ok()) << text.status();
  std::vector<std::string> lines = absl::StrSplit(*text, '\n', absl::SkipEmpty());
  EXPECT_EQ(lines[0], "dim=2");
  ASSERT_EQ(lines.size(), 7u);
  std::vector<std::string> f = absl::StrSplit(lines[1], '\t');
  ASSERT_EQ(f.size(), 3u);
  EXPECT_EQ(f[0], "T1");
  EXPECT_EQ(f[1], "original");
  std::string raw;
  ASSERT_TRUE(absl::Base64Unescape(f[2], &raw));
  EXPECT_EQ(raw.size(), 8u);
}

}  // namespace
}  // namespace ctiaug
