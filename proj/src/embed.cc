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

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/escaping.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "ctiaug/corpus.h"
#include "ctiaug/status_macros.h"
#include "ctiaug/text_util.h"
#include "json.hpp"

namespace ctiaug {

double EmbeddingVector::Norm() const { return std::sqrt(Dot(*this, *this)); }

absl::StatusOr<EmbeddingVector> Normalize(const EmbeddingVector& v) {
  for (double x : v.values()) {
    if (!std::isfinite(x)) {
      return absl::InvalidArgumentError("non-finite embedding");
    }
  }
  const double norm = v.Norm();
  if (!(norm > 1e-12)) return absl::InvalidArgumentError("zero-norm embedding");
  std::vector<double> out(v.values().begin(), v.values().end());
  for (double& x : out) x /= norm;
  return EmbeddingVector(std::move(out));
}

double Dot(const EmbeddingVector& a, const EmbeddingVector& b) {
  double sum = 0.0;
  for (int i = 0; i < a.dim(); ++i) sum += a[i] * b[i];
  return sum;
}

double SquaredEuclidean(const EmbeddingVector& a, const EmbeddingVector& b) {
  double sum = 0.0;
  for (int i = 0; i < a.dim(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return sum;
}

double Euclidean(const EmbeddingVector& a, const EmbeddingVector& b) {
  return std::sqrt(SquaredEuclidean(a, b));
}

absl::StatusOr<double> CosineSimilarity(const EmbeddingVector& a,
                                        const EmbeddingVector& b) {
  if (a.dim() != b.dim()) {
    return absl::InvalidArgumentError(
        absl::StrCat("dimension mismatch: ", a.dim(), " vs ", b.dim()));
  }
  const double na = a.Norm();
  const double nb = b.Norm();
  if (!(na > 0.0) || !(nb > 0.0)) {
    return absl::InvalidArgumentError("zero-norm vector");
  }
  const double c = Dot(a, b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

absl::StatusOr<double> CosineDistance(const EmbeddingVector& a,
                                      const EmbeddingVector& b) {
  ASSIGN_OR_RETURN(double c, CosineSimilarity(a, b));
  return 1.0 - c;
}

EmbeddingVector Mean(std::span<const EmbeddingVector> vs) {
  if (vs.empty()) return EmbeddingVector();
  std::vector<double> sum(vs.front().dim(), 0.0);
  for (const auto& v : vs) {
    for (int i = 0; i < v.dim(); ++i) sum[i] += v[i];
  }
  for (double& x : sum) x /= static_cast<double>(vs.size());
  return EmbeddingVector(std::move(sum));
}

absl::StatusOr<EmbeddingVector> Centroid(std::span<const EmbeddingVector> vs) {
  if (vs.empty()) return absl::InvalidArgumentError("centroid of empty list");
  for (const auto& v : vs) {
    if (v.dim() != vs.front().dim()) {
      return absl::InvalidArgumentError("centroid over mixed dimensions");
    }
  }
  EmbeddingVector mean = Mean(vs);
  if (mean.Norm() < 1e-9) {
    return absl::FailedPreconditionError("centroid has zero norm");
  }
  return Normalize(mean);
}

std::string ContentHash(std::string_view text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(text.data(), text.size(), digest, &length, EVP_sha256(), nullptr);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xf]);
  }
  return out;
}

absl::Status EmbeddingSet::Insert(const std::string& text,
                                  const EmbeddingVector& v) {
  if (v.dim() == 0) return absl::InvalidArgumentError("empty embedding");
  if (dim_ != 0 && v.dim() != dim_) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dimension mismatch: expected ", dim_, ", got ", v.dim()));
  }
  ASSIGN_OR_RETURN(EmbeddingVector unit, Normalize(v));
  dim_ = v.dim();
  vectors_.insert_or_assign(text, std::move(unit));
  return absl::OkStatus();
}

const EmbeddingVector* EmbeddingSet::Find(const std::string& text) const {
  auto it = vectors_.find(text);
  return it == vectors_.end() ? nullptr : &it->second;
}

absl::StatusOr<EmbeddingVector> EmbeddingSet::Get(
    const std::string& text) const {
  const EmbeddingVector* v = Find(text);
  if (v == nullptr) {
    return absl::NotFoundError(absl::StrCat("no embedding for \"", text, "\""));
  }
  return *v;
}

absl::Status EmbeddingSet::Merge(const EmbeddingSet& other) {
  for (const auto& [text, v] : other.entries()) RETURN_IF_ERROR(Insert(text, v));
  if (model_id_.empty()) model_id_ = other.model_id();
  return absl::OkStatus();
}

std::string EncodeFloats(const EmbeddingVector& v) {
  std::string bytes(4 * static_cast<size_t>(v.dim()), '\0');
  for (int i = 0; i < v.dim(); ++i) {
    uint32_t bits = std::bit_cast<uint32_t>(static_cast<float>(v[i]));
    for (int b = 0; b < 4; ++b) {
      bytes[4 * i + b] = static_cast<char>((bits >> (8 * b)) & 0xff);
    }
  }
  return absl::Base64Escape(bytes);
}

absl::StatusOr<EmbeddingVector> DecodeFloats(std::string_view base64) {
  std::string bytes;
  if (!absl::Base64Unescape(Sv(base64), &bytes)) {
    return absl::InvalidArgumentError("invalid base64 in embedding row");
  }
  if (bytes.size() % 4 != 0) {
    return absl::InvalidArgumentError("embedding byte length not a multiple of 4");
  }
  std::vector<double> values(bytes.size() / 4);
  for (size_t i = 0; i < values.size(); ++i) {
    uint32_t bits = 0;
    for (int b = 0; b < 4; ++b) {
      bits |= static_cast<uint32_t>(static_cast<unsigned char>(bytes[4 * i + b]))
              << (8 * b);
    }
    values[i] = std::bit_cast<float>(bits);
  }
  return EmbeddingVector(std::move(values));
}

std::string CompanionTextsPath(const std::string& path) {
  return path + ".texts.jsonl";
}

absl::StatusOr<EmbeddingSet> ParseEmbeddings(std::string_view vectors_file,
                                             std::string_view texts_jsonl) {
  std::map<std::string, std::string> texts_by_hash;
  for (std::string_view line : SplitOn(texts_jsonl, '\n')) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("hash") || !j.contains("text")) {
      return absl::InvalidArgumentError("bad record in embedding text mapping");
    }
    texts_by_hash[j["hash"].get<std::string>()] = j["text"].get<std::string>();
  }

  std::vector<std::string_view> lines = SplitOn(vectors_file, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  EmbeddingSet set;
  if (lines.empty()) return set;

  int declared_dim = 0;
  for (std::string_view field : SplitOn(lines.front(), ' ')) {
    if (field.starts_with("dim=")) {
      field.remove_prefix(4);
      if (!absl::SimpleAtoi(Sv(field), &declared_dim) || declared_dim <= 0) {
        return absl::InvalidArgumentError("bad dim in embedding header");
      }
    } else if (field.starts_with("model=")) {
      field.remove_prefix(6);
      set.set_model_id(std::string(field));
    }
  }
  if (declared_dim == 0) {
    return absl::InvalidArgumentError("embedding header lacks dim=<D>");
  }
  for (size_t i = 1; i < lines.size(); ++i) {
    std::vector<std::string_view> parts = SplitOn(lines[i], '\t');
    if (parts.size() != 2) {
      return absl::InvalidArgumentError(
          absl::StrCat("embedding line ", i + 1, ": expected 2 fields"));
    }
    ASSIGN_OR_RETURN(EmbeddingVector v, DecodeFloats(parts[1]));
    if (v.dim() != declared_dim) {
      return absl::InvalidArgumentError(absl::StrCat(
          "embedding line ", i + 1, ": dimension mismatch (", v.dim(),
          " vs declared ", declared_dim, ")"));
    }
    auto text = texts_by_hash.find(std::string(parts[0]));
    if (text == texts_by_hash.end()) {
      return absl::InvalidArgumentError(
          absl::StrCat("no text recorded for hash ", Sv(parts[0])));
    }
    RETURN_IF_ERROR(set.Insert(text->second, v));
  }
  return set;
}

absl::StatusOr<EmbeddingSet> LoadEmbeddings(const std::string& path) {
  ASSIGN_OR_RETURN(std::string vectors, ReadFile(path));
  std::string texts;
  if (auto t = ReadFile(CompanionTextsPath(path)); t.ok()) {
    texts = *std::move(t);
  }
  return ParseEmbeddings(vectors, texts);
}

absl::Status SaveEmbeddings(const EmbeddingSet& set, const std::string& path) {
  std::string vectors = absl::StrCat("dim=", set.dim(), " model=",
                                     set.model_id(), "\n");
  std::string texts;
  for (const auto& [text, v] : set.entries()) {
    const std::string hash = ContentHash(text);
    absl::StrAppend(&vectors, hash, "\t", EncodeFloats(v), "\n");
    nlohmann::ordered_json j;
    j["hash"] = hash;
    j["text"] = text;
    absl::StrAppend(&texts, j.dump(), "\n");
  }
  RETURN_IF_ERROR(WriteFile(path, vectors));
  return WriteFile(CompanionTextsPath(path), texts);
}

}  // namespace ctiaug
