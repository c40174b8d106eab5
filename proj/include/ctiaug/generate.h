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

// Quota planning, model-output parsing, deduplication and assembly of the
// augmented training set.

#ifndef CTIAUG_GENERATE_H_
#define CTIAUG_GENERATE_H_

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ctiaug/cluster.h"
#include "ctiaug/corpus.h"
#include "ctiaug/prompt.h"
#include "ctiaug/text_generator.h"
#include "json.hpp"

namespace ctiaug {

// quota_c = round(G * |c| / sum |c'|) over non-noise clusters; the rounding
// residue goes to the largest cluster (lowest id on ties) so the quotas sum
// to G exactly.
std::map<int, int> PlanQuotas(int budget, const Clustering& clustering);

// Splits a quota into request sizes of at most `max_per_request`.
std::vector<int> ChunkQuota(int quota, int max_per_request);

// Items introduced by "N.", "N)", "-", "*" or a bullet, markers stripped, in
// order. Lines without a marker are ignored. Zero items is an error.
absl::StatusOr<std::vector<std::string>> ParseGeneration(const std::string& raw);

// Rejects texts whose DedupeKey matches an original or an accepted text.
class DedupeIndex {
 public:
  DedupeIndex() = default;
  explicit DedupeIndex(const std::vector<std::string>& originals);

  void AddOriginal(const std::string& text);

  // Extra rejection test (near-duplicate filter), applied after the exact
  // check.
  void set_extra_filter(std::function<bool(const std::string&)> filter) {
    extra_filter_ = std::move(filter);
  }

  // True and remembered when the text is new.
  bool Accept(const std::string& text);

 private:
  std::set<std::string> originals_;
  std::set<std::string> accepted_;
  std::function<bool(const std::string&)> extra_filter_;
};

// Candidates that survive deduplication against originals and `accepted`,
// in order. Survivors are appended to `accepted`.
std::vector<std::string> Dedupe(const std::vector<std::string>& candidates,
                                const std::vector<std::string>& originals,
                                std::vector<std::string>& accepted);

struct SyntheticRecord {
  std::string text;
  std::string technique_id;
  int cluster_id = 0;
  std::string prompt_hash;
  int attempt = 0;
  std::string method = "synthcti";
};

nlohmann::ordered_json SyntheticRecordToJson(const SyntheticRecord& record);

struct ClusterGenerationResult {
  std::vector<SyntheticRecord> records;
  int requests = 0;
  int retries = 0;
  std::vector<std::string> errors;
};

// Sends the prompt, keeps new items, and re-prompts for the shortfall up to
// config.max_retries times. Never returns more than prompt.count records.
ClusterGenerationResult GenerateForCluster(const PromptSpec& prompt,
                                           const PromptTemplate& tmpl,
                                           TextGenerator& generator,
                                           DedupeIndex& index,
                                           const GenerationConfig& config);

// Training rows followed by the synthetic rows (split = synthetic). Test
// rows are rejected; a synthetic label unknown to train is an error.
absl::StatusOr<std::vector<LabeledSentence>> AssembleAugmented(
    const std::vector<LabeledSentence>& train,
    const std::vector<SyntheticRecord>& synth);

}  // namespace ctiaug

#endif  // CTIAUG_GENERATE_H_
