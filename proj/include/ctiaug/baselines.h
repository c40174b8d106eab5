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

// Cheap comparison augmenters: synonym replacement, random swap and
// character noise. All are pure functions of (input, intensity, seed).

#ifndef CTIAUG_BASELINES_H_
#define CTIAUG_BASELINES_H_

#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "ctiaug/lexicon.h"

namespace ctiaug {

enum class BaselineMethod { kSynonymReplacement, kRandomSwap, kCharNoise };

std::string_view BaselineName(BaselineMethod method);
absl::StatusOr<BaselineMethod> ParseBaseline(std::string_view name);

struct BaselineConfig {
  BaselineMethod method = BaselineMethod::kSynonymReplacement;
  double intensity = 0.15;
  uint64_t seed = 0;
};

// Replaces up to ceil(intensity * words) content words that have database
// synonyms with a uniformly chosen synonym. Leading capitals are kept.
std::string SynonymReplace(std::string_view sentence, double intensity,
                           const SynonymDatabase& lexdb, uint64_t seed);

// ceil(intensity * words) swaps of two distinct, uniformly chosen
// whitespace-delimited words.
std::string RandomSwap(std::string_view sentence, double intensity,
                       uint64_t seed);

// Each ASCII character is perturbed with probability `intensity` by one of:
// adjacent-key substitution, deletion, duplication, transposition with the
// next character.
std::string CharNoise(std::string_view sentence, double intensity,
                      uint64_t seed);

absl::StatusOr<std::string> ApplyBaseline(const BaselineConfig& config,
                                          std::string_view sentence,
                                          const SynonymDatabase* lexdb);

}  // namespace ctiaug

#endif  // CTIAUG_BASELINES_H_
