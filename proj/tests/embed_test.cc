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

#include "ctiaug/embed.h"

#include <cmath>
#include <filesystem>

#include "ctiaug/corpus.h"
#include "gtest/gtest.h"

namespace ctiaug {
namespace {

EmbeddingVector V(std::vector<double> v) { return EmbeddingVector(std::move(v)); }

TEST(NormalizeTest, UnitNormAndErrors) {
  auto n = Normalize(V({3, 4}));
  ASSERT_TRUE(n.ok());
  EXPECT_DOUBLE_EQ((*n)[0], 0.6);
  EXPECT_DOUBLE_EQ((*n)[1], 0.8);
  EXPECT_FALSE(Normalize(V({0, 0})).ok());
  EXPECT_FALSE(Normalize(V({NAN, 1})).ok());
  EXPECT_FALSE(Normalize(V({INFINITY, 1})).ok());
}

TEST(CosineTest, StandardValues) {
  EXPECT_NEAR(*CosineSimilarity(V({1, 0}), V({0, 1})), 0.0, 1e-15);
  EXPECT_NEAR(*CosineSimilarity(V({1, 1}), V({2, 2})), 1.0, 1e-15);
  EXPECT_NEAR(*CosineSimilarity(V({1, 0}), V({-3, 0})), -1.0, 1e-15);
  EXPECT_NEAR(*CosineDistance(V({1, 0}), V({0, 1})), 1.0, 1e-15);
  const double ab = *CosineSimilarity(V({1, 2, 3}), V({-1, 0.5, 2}));
  const double ba = *CosineSimilarity(V({-1, 0.5, 2}), V({1, 2, 3}));
  EXPECT_DOUBLE_EQ(ab, ba);
  EXPECT_FALSE(CosineSimilarity(V({1, 0}), V({1, 0, 0})).ok());
  EXPECT_FALSE(CosineSimilarity(V({0, 0}), V({1, 0})).ok());
}

TEST(CentroidTest, NormalizedMean) {
  const std::vector<EmbeddingVector> vs = {V({1, 0}), V({0, 1})};
  auto c = Centroid(vs);
  ASSERT_TRUE(c.ok());
  EXPECT_NEAR((*c)[0], std::sqrt(0.5), 1e-15);
  EXPECT_NEAR((*c)[1], std::sqrt(0.5), 1e-15);
  EXPECT_DOUBLE_EQ(Mean(vs)[0], 0.5);
  EXPECT_FALSE(Centroid(std::vector<EmbeddingVector>{}).ok());
  EXPECT_FALSE(Centroid(std::vector<EmbeddingVector>{V({1, 0}), V({-1, 0})}).ok());
  EXPECT_FALSE(Centroid(std::vector<EmbeddingVector>{V({1, 0}), V({1, 0, 0})}).ok());
}

TEST(DistanceTest, Euclidean) {
  EXPECT_DOUBLE_EQ(Euclidean(V({0, 0}), V({3, 4})), 5.0);
  EXPECT_DOUBLE_EQ(SquaredEuclidean(V({0, 0}), V({3, 4})), 25.0);
  EXPECT_DOUBLE_EQ(Dot(V({1, 2}), V({3, 4})), 11.0);
}

TEST(ContentHashTest, Sha256Hex) {
  EXPECT_EQ(ContentHash("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(EmbeddingSetTest, InsertNormalizesAndChecksDim) {
  EmbeddingSet set("m");
  ASSERT_TRUE(set.Insert("a", V({0, 2})).ok());
  EXPECT_DOUBLE_EQ((*set.Find("a"))[1], 1.0);
  EXPECT_FALSE(set.Insert("b", V({1, 2, 3})).ok());
  EXPECT_FALSE(set.Insert("c", V({0, 0})).ok());
  EXPECT_FALSE(set.Get("missing").ok());
  EXPECT_EQ(set.Get("missing").status().code(), absl::StatusCode::kNotFound);
}

TEST(EmbeddingFileTest, RoundTripThroughFloat32) {
  const auto dir = std::filesystem::temp_directory_path() / "ctiaug_embed_test";
  std::filesystem::remove_all(dir);
  EmbeddingSet set("mini");
  ASSERT_TRUE(set.Insert("first text", V({0.1, 0.2, 0.3})).ok());
  ASSERT_TRUE(set.Insert("second\ttext", V({-1, 0.5, 0})).ok());
  const std::string path = (dir / "vectors.vec").string();
  ASSERT_TRUE(SaveEmbeddings(set, path).ok());
  auto back = LoadEmbeddings(path);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(back->model_id(), "mini");
  EXPECT_EQ(back->dim(), 3);
  ASSERT_EQ(back->size(), 2u);
  for (const auto& [text, v] : set.entries()) {
    const EmbeddingVector* got = back->Find(text);
    ASSERT_NE(got, nullptr);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR((*got)[i], v[i], 1e-7);
  }
}

TEST(EmbeddingFileTest, EmptyFileIsEmptySet) {
  auto set = ParseEmbeddings("", "");
  ASSERT_TRUE(set.ok());
  EXPECT_TRUE(set->empty());
}

TEST(EmbeddingFileTest, MalformedInputs) {
  const std::string hash = ContentHash("x");
  const std::string texts = "{\"hash\":\"" + hash + "\",\"text\":\"x\"}\n";
  const std::string row = hash + "\t" + EncodeFloats(V({1, 0})) + "\n";
  EXPECT_TRUE(ParseEmbeddings("dim=2 model=m\n" + row, texts).ok());
  EXPECT_FALSE(ParseEmbeddings("dim=3 model=m\n" + row, texts).ok());
  EXPECT_FALSE(ParseEmbeddings("model=m\n" + row, texts).ok());
  EXPECT_FALSE(ParseEmbeddings("dim=2\n" + hash + "\tnot base64!\n", texts).ok());
  EXPECT_FALSE(ParseEmbeddings("dim=2\n" + row, "").ok());
  EXPECT_FALSE(ParseEmbeddings("dim=2\n" + hash + "\n", texts).ok());
}

TEST(EncodeFloatsTest, LittleEndianFloat32) {
  // 1.0f = 0x3f800000 -> bytes 00 00 80 3f.
  EXPECT_EQ(EncodeFloats(V({1.0})), "AACAPw==");
  auto v = DecodeFloats("AACAPw==");
  ASSERT_TRUE(v.ok());
  EXPECT_EQ((*v)[0], 1.0);
  EXPECT_FALSE(DecodeFloats("AACA").ok());
}

}  // namespace
}  // namespace ctiaug
