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

// Sentence embeddings and the vector utilities built on them. Every vector
// that enters an EmbeddingSet is L2-normalized, so cosine similarity and
// squared Euclidean distance are interchangeable: |a-b|^2 = 2(1 - cos).

#ifndef CTIAUG_EMBED_H_
#define CTIAUG_EMBED_H_

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace ctiaug {

class EmbeddingVector {
 public:
  EmbeddingVector() = default;
  explicit EmbeddingVector(std::vector<double> values)
      : values_(std::move(values)) {}

  int dim() const { return static_cast<int>(values_.size()); }
  std::span<const double> values() const { return values_; }
  double operator[](size_t i) const { return values_[i]; }

  double Norm() const;

  friend bool operator==(const EmbeddingVector&,
                         const EmbeddingVector&) = default;

 private:
  std::vector<double> values_;
};

// Unit-length copy. Fails on non-finite entries or a zero vector.
absl::StatusOr<EmbeddingVector> Normalize(const EmbeddingVector& v);

double Dot(const EmbeddingVector& a, const EmbeddingVector& b);
double SquaredEuclidean(const EmbeddingVector& a, const EmbeddingVector& b);
double Euclidean(const EmbeddingVector& a, const EmbeddingVector& b);

absl::StatusOr<double> CosineSimilarity(const EmbeddingVector& a,
                                        const EmbeddingVector& b);
absl::StatusOr<double> CosineDistance(const EmbeddingVector& a,
                                      const EmbeddingVector& b);

// Arithmetic mean, re-normalized. Fails on an empty list, mixed dims, or a
// mean of (numerically) zero length such as {v, -v}.
absl::StatusOr<EmbeddingVector> Centroid(std::span<const EmbeddingVector> vs);

// Unnormalized arithmetic mean.
EmbeddingVector Mean(std::span<const EmbeddingVector> vs);

// Lowercase hex SHA-256 of the text bytes.
std::string ContentHash(std::string_view text);

class EmbeddingSet {
 public:
  EmbeddingSet() = default;
  explicit EmbeddingSet(std::string model_id) : model_id_(std::move(model_id)) {}

  const std::string& model_id() const { return model_id_; }
  void set_model_id(std::string id) { model_id_ = std::move(id); }
  int dim() const { return dim_; }
  size_t size() const { return vectors_.size(); }
  bool empty() const { return vectors_.empty(); }

  // Normalizes and stores. The first insert fixes the dimension.
  absl::Status Insert(const std::string& text, const EmbeddingVector& v);

  const EmbeddingVector* Find(const std::string& text) const;
  absl::StatusOr<EmbeddingVector> Get(const std::string& text) const;
  bool Contains(const std::string& text) const { return Find(text) != nullptr; }

  // Copies every entry of `other` into this set.
  absl::Status Merge(const EmbeddingSet& other);

  const std::map<std::string, EmbeddingVector>& entries() const {
    return vectors_;
  }

 private:
  std::string model_id_;
  int dim_ = 0;
  std::map<std::string, EmbeddingVector> vectors_;
};

// Embedding file: header `dim=<D> model=<id>`, then one line per text with
// `<sha256-hex>\t<base64 of little-endian float32>`. The companion JSONL
// holds `{"hash": ..., "text": ...}` records.
absl::StatusOr<EmbeddingSet> ParseEmbeddings(std::string_view vectors_file,
                                             std::string_view texts_jsonl);
absl::StatusOr<EmbeddingSet> LoadEmbeddings(const std::string& path);
absl::Status SaveEmbeddings(const EmbeddingSet& set, const std::string& path);

// Path of the companion text mapping for an embedding file.
std::string CompanionTextsPath(const std::string& path);

std::string EncodeFloats(const EmbeddingVector& v);
absl::StatusOr<EmbeddingVector> DecodeFloats(std::string_view base64);

}  // namespace ctiaug

#endif  // CTIAUG_EMBED_H_
