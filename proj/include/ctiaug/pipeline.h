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

// Config-driven orchestration behind the command-line tool: corpus
// statistics, splitting, augmentation (main method or a baseline) and quality
// evaluation. Every output is a pure function of the inputs and RunConfig.

#ifndef CTIAUG_PIPELINE_H_
#define CTIAUG_PIPELINE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ctiaug/baselines.h"
#include "ctiaug/cluster.h"
#include "ctiaug/corpus.h"
#include "ctiaug/embedding_provider.h"
#include "ctiaug/features.h"
#include "ctiaug/prompt.h"
#include "ctiaug/quality.h"
#include "ctiaug/text_generator.h"
#include "json.hpp"

namespace ctiaug {

struct EmbeddingConfig {
  // "hashing" (offline), "file" (precomputed vectors) or "http".
  std::string provider = "hashing";
  std::string path;  // vectors file for "file"
  int hashing_dim = 256;
  ServiceConfig service;
  std::string cache_dir;  // optional disk cache for "http"
};

struct RunConfig {
  std::string dataset_path;
  LoadOptions load;
  double test_fraction = 0.2;
  uint64_t seed = 13;
  EmbeddingConfig embedding;
  ClusterParams cluster;
  FeatureOptions features;
  std::string synonyms_path;     // WordNet dict dir or TSV; empty = none
  std::string frequencies_path;  // word<TAB>zipf; empty = all zero
  std::string prompt_template_path;
  PromptTemplate prompt;
  GenerationConfig generation;
  double baseline_intensity = 0.15;
  QualityOptions quality;
  int parallelism = 1;  // classes processed concurrently
  std::string output_dir = "out";
};

enum class Method { kSynthCti, kSynonymReplacement, kRandomSwap, kCharNoise };

std::string_view MethodName(Method method);
absl::StatusOr<Method> ParseMethod(std::string_view name);

// Unknown keys are rejected so typos do not silently fall back to defaults.
absl::StatusOr<RunConfig> RunConfigFromJson(const nlohmann::json& j);
nlohmann::ordered_json RunConfigToJson(const RunConfig& config);
absl::StatusOr<RunConfig> LoadRunConfig(const std::string& path);

absl::StatusOr<std::unique_ptr<EmbeddingProvider>> MakeEmbeddingProvider(
    const EmbeddingConfig& config);

struct StatsReport {
  ClassStats corpus;
  ClassStats train;
  Budget budget;  // on the training split
  std::vector<Reject> rejects;
};

absl::StatusOr<StatsReport> RunStats(const RunConfig& config);
std::string StatsTable(const StatsReport& report);
nlohmann::ordered_json StatsToJson(const StatsReport& report);

absl::StatusOr<TrainTestSplit> RunSplit(const RunConfig& config);

struct ClassRunReport {
  std::string technique_id;
  int n_train = 0;
  int requested = 0;
  int obtained = 0;
  int clusters = 0;
  bool fallback = false;
  int requests = 0;
  int retries = 0;
  std::vector<std::string> errors;
};

struct AugmentResult {
  std::vector<LabeledSentence> manifest;  // train, synthetic, test
  std::vector<ClassRunReport> classes;
  // False when some class fell short of its budget.
  bool complete = true;
};

// Writes manifest.jsonl, train.jsonl, test.jsonl, rejects.jsonl,
// run_report.json, resolved_config.json and, for the main method, per-cluster
// features/, prompts/ and clusters/ under config.output_dir.
absl::StatusOr<AugmentResult> RunAugment(const RunConfig& config,
                                         Method method);

// Reads <output_dir>/manifest.jsonl and writes quality.jsonl, diversity.csv
// and projection.tsv beside it.
absl::StatusOr<std::vector<ClassQuality>> RunEvaluate(const RunConfig& config);

}  // namespace ctiaug

#endif  // CTIAUG_PIPELINE_H_
