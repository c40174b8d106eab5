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

// Labeled CTI sentence corpora: CSV ingestion, stratified splitting, class
// statistics and per-class augmentation budgets.

#ifndef CTIAUG_CORPUS_H_
#define CTIAUG_CORPUS_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "json.hpp"

namespace ctiaug {

enum class Split { kTrain, kTest, kSynthetic };

std::string_view SplitName(Split split);
absl::StatusOr<Split> ParseSplit(std::string_view name);

struct LabeledSentence {
  std::string text;
  std::string technique_id;
  Split split = Split::kTrain;

  friend bool operator==(const LabeledSentence&,
                         const LabeledSentence&) = default;
};

// True for "T" followed by four digits, optionally ".ddd" (T1006, T1564.001).
bool IsValidTechniqueId(std::string_view id);

struct Reject {
  int row = 0;  // 1-based data row, header excluded.
  std::string reason;
};

struct CsvColumns {
  std::string sentence = "sentence";
  std::string label = "label";
};

struct LoadOptions {
  CsvColumns columns;
  bool drop_duplicates = false;
};

struct LoadResult {
  std::vector<LabeledSentence> sentences;
  std::vector<Reject> rejects;
};

// RFC 4180 CSV: quoted fields may hold commas, doubled quotes and newlines.
absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    std::string_view content);

absl::StatusOr<LoadResult> ParseCorpusCsv(std::string_view content,
                                          const LoadOptions& options);
absl::StatusOr<LoadResult> LoadCorpus(const std::string& path,
                                      const LoadOptions& options);

struct TrainTestSplit {
  std::vector<LabeledSentence> train;
  std::vector<LabeledSentence> test;
};

// Per class, floor(N_i * test_fraction) sentences go to test. Both outputs
// keep corpus order. Deterministic in (corpus, test_fraction, seed).
absl::StatusOr<TrainTestSplit> StratifiedSplit(
    const std::vector<LabeledSentence>& corpus, double test_fraction,
    uint64_t seed);

struct ClassStats {
  std::map<std::string, int> counts;
  double mu = 0.0;
  int m = 0;
};

absl::StatusOr<ClassStats> ComputeClassStats(
    const std::vector<LabeledSentence>& corpus);

struct Budget {
  std::map<std::string, int> quotas;
};

// G_i = max(0, ceil(mu) - N_i).
Budget AugmentationBudget(const ClassStats& stats);

nlohmann::ordered_json SentenceToJson(const LabeledSentence& sentence);
absl::StatusOr<LabeledSentence> SentenceFromJson(const nlohmann::json& record);

std::string ManifestToJsonl(const std::vector<LabeledSentence>& sentences);
std::string RejectsToJsonl(const std::vector<Reject>& rejects);

// Reads a manifest written by ManifestToJsonl or by the augmenter (extra
// provenance fields are ignored).
absl::StatusOr<std::vector<LabeledSentence>> ReadManifest(
    const std::string& path);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view content);

}  // namespace ctiaug

#endif  // CTIAUG_CORPUS_H_
