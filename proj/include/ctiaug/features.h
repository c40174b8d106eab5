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

// The per-cluster prompt features: few-shot examples, topics, keyphrases,
// scored synonyms, tone and text type.

#ifndef CTIAUG_FEATURES_H_
#define CTIAUG_FEATURES_H_

#include <string>
#include <unordered_set>
#include <vector>

#include "absl/status/statusor.h"
#include "ctiaug/embedding_provider.h"
#include "ctiaug/lexicon.h"
#include "ctiaug/readability.h"
#include "ctiaug/topics.h"
#include "json.hpp"

namespace ctiaug {

struct ClusterFeatureBundle {
  std::string technique_id;
  int cluster_id = 0;
  std::vector<std::string> few_shots;
  std::vector<Topic> topics;
  std::vector<std::string> keyphrases;
  std::vector<std::string> synonyms;
  std::vector<Tone> tones;  // one or two, dominant first
  double avg_sentences_per_instance = 1.0;
  bool degenerate_topics = false;
  bool no_keyphrases = false;
};

nlohmann::ordered_json BundleToJson(const ClusterFeatureBundle& bundle);
absl::StatusOr<ClusterFeatureBundle> BundleFromJson(const nlohmann::json& j);

// First `max_shots` entries of a membership-ranked member list.
std::vector<std::string> SelectFewShots(const std::vector<std::string>& ranked,
                                        int max_shots = 2);

// Unigram and bigram candidates (stopwords removed), ranked by cosine to the
// centroid of the sentence embeddings; the best `top_k` are returned in
// case-insensitive alphabetical order. Empty when there are no candidates.
absl::StatusOr<std::vector<std::string>> ExtractKeyphrases(
    const std::vector<std::string>& texts, EmbeddingProvider& provider,
    int top_k, const std::unordered_set<std::string>& stopwords);

// Mean sentence count per instance.
absl::StatusOr<double> TextType(const std::vector<std::string>& texts);

// Each text contributes its Flesch and Fog labels to the pool.
std::vector<Tone> ToneLabels(const std::vector<std::string>& texts);

struct FeatureOptions {
  TopicOptions topics;
  int keyphrase_top_k = 13;
  SynonymOptions synonyms;
  double tone_margin = 0.20;
  int few_shots = 2;
};

struct FeatureResources {
  EmbeddingProvider* provider = nullptr;
  const SynonymDatabase* lexdb = nullptr;
  const FrequencyTable* freq = nullptr;
  const std::unordered_set<std::string>* stopwords = nullptr;
};

// `ranked_texts` are the cluster members ordered by membership probability.
absl::StatusOr<ClusterFeatureBundle> ExtractFeatures(
    const std::string& technique_id, int cluster_id,
    const std::vector<std::string>& ranked_texts,
    const FeatureResources& resources, const FeatureOptions& options);

}  // namespace ctiaug

#endif  // CTIAUG_FEATURES_H_
