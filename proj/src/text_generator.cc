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

#include "ctiaug/text_generator.h"

#include <cctype>
#include <chrono>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ctiaug/rng.h"
#include "ctiaug/text_util.h"
#include "httplib.h"
#include "json.hpp"

namespace ctiaug {
namespace {

constexpr const char* kOpeners[] = {
    "",
    "In observed intrusions, ",
    "According to incident reports, ",
    "During recent campaigns, ",
    "Analysts noted that ",
    "In several cases, ",
    "Threat reports describe how ",
    "As part of the attack chain, ",
    "Investigators found that ",
    "In documented operations, ",
    "Security researchers observed that ",
};

constexpr const char* kClosings[] = {
    "",
    " to avoid detection",
    " on compromised hosts",
    " during the intrusion",
    " within the victim network",
    " after gaining initial access",
    " to maintain access",
    " without alerting defenders",
    " across multiple systems",
    " as part of the operation",
    " in targeted environments",
};

std::string StripTerminal(std::string s) {
  while (!s.empty() && (s.back() == '.' || s.back() == '!' || s.back() == '?' ||
                        std::isspace(static_cast<unsigned char>(s.back())))) {
    s.pop_back();
  }
  return s;
}

// Replaces one word token that has a candidate synonym in the pool.
std::string Substitute(const std::string& sentence,
                       const std::vector<std::string>& pool, Rng& rng) {
  if (pool.empty()) return sentence;
  std::vector<Token> tokens = ContentTokens(sentence, DefaultStopwords());
  if (tokens.empty()) return sentence;
  const Token& victim = tokens[rng.Below(tokens.size())];
  const std::string& replacement = pool[rng.Below(pool.size())];
  size_t pos = 0;
  while ((pos = sentence.find(victim.surface, pos)) != std::string::npos) {
    const bool left_ok = pos == 0 || !std::isalnum(static_cast<unsigned char>(sentence[pos - 1]));
    const size_t end = pos + victim.surface.size();
    const bool right_ok =
        end == sentence.size() || !std::isalnum(static_cast<unsigned char>(sentence[end]));
    if (left_ok && right_ok) {
      return sentence.substr(0, pos) + replacement + sentence.substr(end);
    }
    pos = end;
  }
  return sentence;
}

bool IsTransient(int status) { return status == 429 || status >= 500; }

}  // namespace

absl::Status ValidateGenerationConfig(const GenerationConfig& config) {
  if (config.max_retries < 0) {
    return absl::InvalidArgumentError("max_retries must be >= 0");
  }
  if (config.parallelism < 1) {
    return absl::InvalidArgumentError("parallelism must be >= 1");
  }
  if (config.max_items_per_request < 1) {
    return absl::InvalidArgumentError("max_items_per_request must be >= 1");
  }
  if (config.api_style != "completion" && config.api_style != "chat") {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown api_style '", config.api_style, "'"));
  }
  return absl::OkStatus();
}

absl::StatusOr<std::string> HttpTextGenerator::Generate(
    const GenerationRequest& request) {
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout_seconds, 0);
  client.set_read_timeout(config_.timeout_seconds, 0);

  const bool chat = config_.api_style == "chat";
  nlohmann::json body = {{"model", config_.model_id},
                         {"temperature", config_.temperature},
                         {"max_tokens", config_.max_tokens}};
  if (chat) {
    body["messages"] = nlohmann::json::array(
        {{{"role", "user"}, {"content", request.prompt}}});
  } else {
    body["prompt"] = request.prompt;
  }
  const std::string path = chat ? config_.chat_path : "/generate";
  const std::string payload = body.dump();

  absl::Status last = absl::UnavailableError("no attempt made");
  int backoff_ms = config_.initial_backoff_ms;
  for (int attempt = 0; attempt < std::max(1, config_.http_attempts); ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(std::chrono::milliseconds(backoff_ms));
      backoff_ms *= 2;
    }
    auto res = client.Post(path, payload, "application/json");
    if (!res) {
      last = absl::UnavailableError(absl::StrCat(
          "generation endpoint unreachable: ", httplib::to_string(res.error())));
      continue;
    }
    if (res->status != 200) {
      last = absl::UnavailableError(
          absl::StrCat("generation endpoint returned HTTP ", res->status));
      if (IsTransient(res->status)) continue;
      return last;
    }
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded()) {
      return absl::DataLossError("generation response is not JSON");
    }
    if (reply.contains("text") && reply["text"].is_string()) {
      return reply["text"].get<std::string>();
    }
    if (reply.contains("choices") && reply["choices"].is_array() &&
        !reply["choices"].empty()) {
      const auto& choice = reply["choices"][0];
      if (choice.contains("message") && choice["message"].contains("content")) {
        return choice["message"]["content"].get<std::string>();
      }
      if (choice.contains("text")) return choice["text"].get<std::string>();
    }
    if (reply.contains("message") && reply["message"].contains("content")) {
      return reply["message"]["content"].get<std::string>();
    }
    return absl::DataLossError("generation response has no text field");
  }
  return last;
}

absl::StatusOr<std::string> MockTextGenerator::Generate(
    const GenerationRequest& request) {
  Rng rng(DeriveSeed(seed_, absl::StrCat(Fnv1a64(request.prompt), ":",
                                          request.attempt)));
  std::vector<std::string> sources;
  std::vector<std::string> pool;
  if (request.bundle != nullptr) {
    sources = request.bundle->few_shots;
    pool = request.bundle->synonyms;
    if (sources.empty() && !request.bundle->keyphrases.empty()) {
      for (const auto& k : request.bundle->keyphrases) {
        sources.push_back(absl::StrCat("Adversaries rely on ", k));
      }
    }
  }
  if (sources.empty()) sources.push_back("The adversary performed this technique");

  std::string out = "Here are the generated sentences:\n";
  for (int i = 0; i < request.count; ++i) {
    std::string base = StripTerminal(sources[rng.Below(sources.size())]);
    if (rng.Bernoulli(0.6)) base = Substitute(base, pool, rng);
    const std::string opener = kOpeners[rng.Below(std::size(kOpeners))];
    const std::string closing = kClosings[rng.Below(std::size(kClosings))];
    // Lowercase a leading function word ("The"), never a name.
    const std::string first_word = base.substr(0, base.find(' '));
    if (!opener.empty() && !base.empty() &&
        DefaultStopwords().contains(AsciiLower(first_word))) {
      base[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(base[0])));
    }
    std::string item = absl::StrCat(opener, base, closing, ".");
    item[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(item[0])));
    absl::StrAppend(&out, i + 1, ". ", item, "\n");
  }
  return out;
}

std::unique_ptr<TextGenerator> MakeTextGenerator(const GenerationConfig& config,
                                                 uint64_t seed) {
  if (config.use_mock) return std::make_unique<MockTextGenerator>(seed);
  return std::make_unique<HttpTextGenerator>(config);
}

}  // namespace ctiaug
