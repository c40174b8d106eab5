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

#include "ctiaug/embedding_provider.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ctiaug/corpus.h"
#include "ctiaug/rng.h"
#include "ctiaug/status_macros.h"
#include "ctiaug/text_util.h"
#include "httplib.h"
#include "json.hpp"

namespace ctiaug {
namespace {

std::vector<std::string> Distinct(const std::vector<std::string>& texts) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& t : texts) {
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

bool IsTransient(int status) { return status == 429 || status >= 500; }

}  // namespace

absl::StatusOr<EmbeddingSet> StaticEmbeddingProvider::Embed(
    const std::vector<std::string>& texts) {
  EmbeddingSet out(set_.model_id());
  for (const auto& text : Distinct(texts)) {
    ASSIGN_OR_RETURN(EmbeddingVector v, set_.Get(text));
    RETURN_IF_ERROR(out.Insert(text, v));
  }
  return out;
}

std::string HashingEmbeddingProvider::model_id() const {
  return absl::StrCat("hashing-", dim_);
}

EmbeddingVector HashingEmbeddingProvider::EmbedOne(
    const std::string& text) const {
  std::vector<double> v(dim_, 0.0);
  auto add = [&](std::string_view feature, double weight) {
    const uint64_t h = Fnv1a64(feature);
    const double sign = (h >> 63) ? -1.0 : 1.0;
    v[h % static_cast<uint64_t>(dim_)] += sign * weight;
  };
  std::vector<Token> tokens = WordTokens(text);
  for (const Token& t : tokens) {
    add(absl::StrCat("w:", t.key), 1.0);
    const std::string padded = absl::StrCat(" ", t.key, " ");
    for (size_t i = 0; i + 3 <= padded.size(); ++i) {
      add(absl::StrCat("c:", padded.substr(i, 3)), 0.25);
    }
  }
  if (tokens.empty()) add(absl::StrCat("raw:", text), 1.0);
  return EmbeddingVector(std::move(v));
}

absl::StatusOr<EmbeddingSet> HashingEmbeddingProvider::Embed(
    const std::vector<std::string>& texts) {
  EmbeddingSet out(model_id());
  for (const auto& text : Distinct(texts)) {
    RETURN_IF_ERROR(out.Insert(text, EmbedOne(text)));
  }
  return out;
}

FetchStats HttpEmbeddingProvider::stats() const {
  std::lock_guard<std::mutex> lock(mu_);
  return stats_;
}

absl::StatusOr<std::vector<EmbeddingVector>> HttpEmbeddingProvider::FetchBatch(
    const std::vector<std::string>& batch) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);
  nlohmann::json request = {{"model", config_.model_id}, {"texts", batch}};
  const std::string body = request.dump();

  absl::Status last_error = absl::UnavailableError("no attempt made");
  double backoff_ms = config_.initial_backoff_ms;
  for (int attempt = 0; attempt < std::max(1, config_.max_attempts); ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(
          std::chrono::microseconds(static_cast<int64_t>(backoff_ms * 1000)));
      backoff_ms *= config_.backoff_multiplier;
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.retries;
    }
    {
      std::lock_guard<std::mutex> lock(mu_);
      ++stats_.requests;
    }
    auto res = client.Post("/embed", body, "application/json");
    if (!res) {
      last_error = absl::UnavailableError(absl::StrCat(
          "embedding service unreachable: ", httplib::to_string(res.error())));
      continue;
    }
    if (res->status != 200) {
      last_error = absl::UnavailableError(
          absl::StrCat("embedding service returned HTTP ", res->status));
      if (IsTransient(res->status)) continue;
      return last_error;
    }
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("vectors") ||
        !reply["vectors"].is_array()) {
      return absl::DataLossError("malformed embedding service response");
    }
    const auto& vectors = reply["vectors"];
    if (vectors.size() != batch.size()) {
      return absl::DataLossError(absl::StrCat(
          "count mismatch: sent ", batch.size(), " texts, got ",
          vectors.size(), " vectors"));
    }
    const int dim = reply.value("dim", 0);
    std::vector<EmbeddingVector> out;
    out.reserve(vectors.size());
    for (const auto& row : vectors) {
      std::vector<double> values;
      try {
        values = row.get<std::vector<double>>();
      } catch (const nlohmann::json::exception&) {
        return absl::DataLossError("non-numeric vector in embedding response");
      }
      if (dim > 0 && static_cast<int>(values.size()) != dim) {
        return absl::DataLossError(absl::StrCat(
            "dimension mismatch: declared ", dim, ", got ", values.size()));
      }
      out.emplace_back(std::move(values));
    }
    return out;
  }
  return last_error;
}

absl::StatusOr<EmbeddingSet> HttpEmbeddingProvider::Embed(
    const std::vector<std::string>& texts) {
  const std::vector<std::string> distinct = Distinct(texts);
  std::vector<std::vector<std::string>> batches;
  const size_t batch_size = static_cast<size_t>(std::max(1, config_.batch_size));
  for (size_t i = 0; i < distinct.size(); i += batch_size) {
    batches.emplace_back(distinct.begin() + i,
                         distinct.begin() + std::min(distinct.size(), i + batch_size));
  }

  std::vector<absl::StatusOr<std::vector<EmbeddingVector>>> results(
      batches.size(), absl::UnknownError("not fetched"));
  const size_t width = static_cast<size_t>(std::max(1, config_.parallelism));
  for (size_t start = 0; start < batches.size(); start += width) {
    std::vector<std::future<void>> wave;
    for (size_t b = start; b < std::min(batches.size(), start + width); ++b) {
      wave.push_back(std::async(std::launch::async, [this, &batches, &results, b] {
        results[b] = FetchBatch(batches[b]);
      }));
    }
    for (auto& f : wave) f.get();
  }

  EmbeddingSet out(config_.model_id);
  for (size_t b = 0; b < batches.size(); ++b) {
    if (!results[b].ok()) return results[b].status();
    for (size_t i = 0; i < batches[b].size(); ++i) {
      RETURN_IF_ERROR(out.Insert(batches[b][i], (*results[b])[i]));
    }
  }
  return out;
}

absl::StatusOr<EmbeddingSet> FetchEmbeddings(
    const ServiceConfig& config, const std::vector<std::string>& texts,
    FetchStats* stats) {
  if (texts.empty()) return absl::InvalidArgumentError("no texts to embed");
  HttpEmbeddingProvider provider(config);
  auto result = provider.Embed(texts);
  if (stats != nullptr) *stats = provider.stats();
  return result;
}

std::string CachedEmbeddingProvider::EntryPath(const std::string& text) const {
  std::string model = inner_->model_id();
  for (char& c : model) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '.') {
      c = '_';
    }
  }
  return (std::filesystem::path(cache_dir_) / model / (ContentHash(text) + ".vec"))
      .string();
}

absl::StatusOr<EmbeddingSet> CachedEmbeddingProvider::Embed(
    const std::vector<std::string>& texts) {
  EmbeddingSet out(model_id());
  std::vector<std::string> missing;
  for (const auto& text : Distinct(texts)) {
    auto cached = ReadFile(EntryPath(text));
    if (cached.ok()) {
      auto v = DecodeFloats(*cached);
      if (v.ok() && out.Insert(text, *v).ok()) {
        ++cache_hits_;
        continue;
      }
    }
    missing.push_back(text);
  }
  if (missing.empty()) return out;

  ASSIGN_OR_RETURN(EmbeddingSet fetched, inner_->Embed(missing));
  for (const auto& text : missing) {
    ASSIGN_OR_RETURN(EmbeddingVector v, fetched.Get(text));
    // Round through float32 so a cold run and a cached run see equal vectors.
    const std::string encoded = EncodeFloats(v);
    ASSIGN_OR_RETURN(EmbeddingVector stored, DecodeFloats(encoded));
    RETURN_IF_ERROR(out.Insert(text, stored));
    const std::string path = EntryPath(text);
    const std::string tmp = absl::StrCat(
        path, ".tmp", std::hash<std::thread::id>()(std::this_thread::get_id()));
    if (WriteFile(tmp, encoded).ok()) {
      std::error_code ec;
      std::filesystem::rename(tmp, path, ec);
    }
  }
  return out;
}

absl::StatusOr<EmbeddingSet> RecordingEmbeddingProvider::Embed(
    const std::vector<std::string>& texts) {
  ASSIGN_OR_RETURN(EmbeddingSet set, inner_->Embed(texts));
  std::lock_guard<std::mutex> lock(mu_);
  RETURN_IF_ERROR(seen_.Merge(set));
  return set;
}

}  // namespace ctiaug
