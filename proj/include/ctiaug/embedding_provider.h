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

#ifndef CTIAUG_EMBEDDING_PROVIDER_H_
#define CTIAUG_EMBEDDING_PROVIDER_H_

#include <atomic>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ctiaug/embed.h"

namespace ctiaug {

// Source of sentence embeddings. Implementations return one normalized
// vector per distinct input text.
class EmbeddingProvider {
 public:
  virtual ~EmbeddingProvider() = default;
  virtual std::string model_id() const = 0;
  virtual absl::StatusOr<EmbeddingSet> Embed(
      const std::vector<std::string>& texts) = 0;
};

// Serves lookups from a preloaded set; unknown texts are an error.
class StaticEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit StaticEmbeddingProvider(EmbeddingSet set) : set_(std::move(set)) {}

  std::string model_id() const override { return set_.model_id(); }
  absl::StatusOr<EmbeddingSet> Embed(
      const std::vector<std::string>& texts) override;

 private:
  EmbeddingSet set_;
};

// Offline bag-of-features embedder: signed feature hashing of lowercase word
// tokens and character trigrams. No semantics beyond lexical overlap; used
// for CI and for runs without an embedding service.
class HashingEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HashingEmbeddingProvider(int dim = 256) : dim_(dim) {}

  std::string model_id() const override;
  absl::StatusOr<EmbeddingSet> Embed(
      const std::vector<std::string>& texts) override;

  EmbeddingVector EmbedOne(const std::string& text) const;

 private:
  int dim_;
};

struct ServiceConfig {
  std::string base_url = "http://127.0.0.1:8080";
  std::string model_id = "all-MiniLM-L6-v2";
  int batch_size = 64;
  int max_attempts = 4;
  int initial_backoff_ms = 250;
  double backoff_multiplier = 2.0;
  int timeout_seconds = 60;
  int parallelism = 1;
};

struct FetchStats {
  int requests = 0;
  int retries = 0;
};

// Client for `POST /embed {"model", "texts"} -> {"dim", "vectors"}`.
// Requests are deduplicated, batched and retried with exponential backoff on
// connection errors, 429 and 5xx responses.
class HttpEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit HttpEmbeddingProvider(ServiceConfig config)
      : config_(std::move(config)) {}

  std::string model_id() const override { return config_.model_id; }
  absl::StatusOr<EmbeddingSet> Embed(
      const std::vector<std::string>& texts) override;

  FetchStats stats() const;

 private:
  absl::StatusOr<std::vector<EmbeddingVector>> FetchBatch(
      const std::vector<std::string>& batch);

  ServiceConfig config_;
  mutable std::mutex mu_;
  FetchStats stats_;
};

// Disk cache in front of another provider, keyed by (model_id, SHA-256 of
// the text). One file per text; writers race benignly via rename.
class CachedEmbeddingProvider : public EmbeddingProvider {
 public:
  CachedEmbeddingProvider(std::unique_ptr<EmbeddingProvider> inner,
                          std::string cache_dir)
      : inner_(std::move(inner)), cache_dir_(std::move(cache_dir)) {}

  std::string model_id() const override { return inner_->model_id(); }
  absl::StatusOr<EmbeddingSet> Embed(
      const std::vector<std::string>& texts) override;

  int cache_hits() const { return cache_hits_.load(); }

 private:
  std::string EntryPath(const std::string& text) const;

  std::unique_ptr<EmbeddingProvider> inner_;
  std::string cache_dir_;
  std::atomic<int> cache_hits_{0};
};

// One-shot fetch against an embedding service.
absl::StatusOr<EmbeddingSet> FetchEmbeddings(const ServiceConfig& config,
                                             const std::vector<std::string>& texts,
                                             FetchStats* stats = nullptr);

// Keeps every vector the wrapped provider has produced, so a pipeline run can
// write out exactly the embeddings it used.
class RecordingEmbeddingProvider : public EmbeddingProvider {
 public:
  explicit RecordingEmbeddingProvider(EmbeddingProvider* inner)
      : inner_(inner), seen_(inner->model_id()) {}

  std::string model_id() const override { return inner_->model_id(); }
  absl::StatusOr<EmbeddingSet> Embed(
      const std::vector<std::string>& texts) override;

  const EmbeddingSet& seen() const { return seen_; }

 private:
  EmbeddingProvider* inner_;
  std::mutex mu_;
  EmbeddingSet seen_;
};

}  // namespace ctiaug

#endif  // CTIAUG_EMBEDDING_PROVIDER_H_
