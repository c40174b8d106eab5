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

#ifndef CTIAUG_TEXT_GENERATOR_H_
#define CTIAUG_TEXT_GENERATOR_H_

#include <cstdint>
#include <memory>
#include <string>

#include "absl/status/statusor.h"
#include "ctiaug/features.h"

namespace ctiaug {

struct GenerationConfig {
  std::string base_url = "http://127.0.0.1:8081";
  std::string model_id = "gemma-3-4b";
  // "completion": POST /generate {"model","prompt","temperature","max_tokens"}
  // -> {"text"}. "chat": POST chat_path {"model","messages",...} and the
  // first choice's message content is used.
  std::string api_style = "completion";
  std::string chat_path = "/v1/chat/completions";
  double temperature = 0.8;
  int max_tokens = 1024;
  int max_retries = 3;       // re-prompts for a shortfall
  int http_attempts = 3;     // per request, for transient HTTP failures
  int initial_backoff_ms = 500;
  int timeout_seconds = 120;
  int parallelism = 1;
  int max_items_per_request = 20;
  bool use_mock = false;
  bool near_duplicate_filter = false;
  double near_duplicate_cosine = 0.98;
};

absl::Status ValidateGenerationConfig(const GenerationConfig& config);

struct GenerationRequest {
  std::string prompt;
  int count = 1;
  int attempt = 0;
  const ClusterFeatureBundle* bundle = nullptr;
};

class TextGenerator {
 public:
  virtual ~TextGenerator() = default;
  virtual std::string name() const = 0;
  virtual absl::StatusOr<std::string> Generate(const GenerationRequest& request) = 0;
};

class HttpTextGenerator : public TextGenerator {
 public:
  explicit HttpTextGenerator(GenerationConfig config)
      : config_(std::move(config)) {}

  std::string name() const override { return config_.model_id; }
  absl::StatusOr<std::string> Generate(const GenerationRequest& request) override;

 private:
  GenerationConfig config_;
};

// Offline stand-in for a model. Each item rephrases a few-shot example with
// a seeded opener, closing clause and synonym substitution, and the reply is
// a numbered list behind a one-line preamble. Output depends only on the
// seed, the prompt text and the attempt number.
class MockTextGenerator : public TextGenerator {
 public:
  explicit MockTextGenerator(uint64_t seed) : seed_(seed) {}

  std::string name() const override { return "mock"; }
  absl::StatusOr<std::string> Generate(const GenerationRequest& request) override;

 private:
  uint64_t seed_;
};

std::unique_ptr<TextGenerator> MakeTextGenerator(const GenerationConfig& config,
                                                 uint64_t seed);

}  // namespace ctiaug

#endif  // CTIAUG_TEXT_GENERATOR_H_
