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

// Cluster topics: LDA fitted by collapsed Gibbs sampling on TF-IDF weights
// turned into integer pseudo-counts.

#ifndef CTIAUG_TOPICS_H_
#define CTIAUG_TOPICS_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

#include "absl/status/statusor.h"

namespace ctiaug {

struct Topic {
  int topic_id = 0;
  std::vector<std::string> top_terms;

  friend bool operator==(const Topic&, const Topic&) = default;
};

// Unigram and adjacent-bigram terms of each document after stopword
// removal. Terms are keyed by their lowercase form; `display` maps each key
// to the spelling shown in prompts.
struct TermDocuments {
  std::vector<std::string> vocabulary;  // sorted keys
  std::vector<std::map<int, int>> counts;  // per document: term index -> tf
  std::map<std::string, std::string> display;
};

TermDocuments BuildTermDocuments(const std::vector<std::string>& texts,
                                 const std::unordered_set<std::string>& stopwords);

// Smoothed idf (ln((1 + n) / (1 + df)) + 1) times raw tf, each document row
// L2-normalized.
std::vector<std::map<int, double>> TfIdf(const TermDocuments& docs);

// Scales weights so the cluster maximum becomes `max_count`; every nonzero
// weight maps to at least 1.
std::vector<std::map<int, int>> PseudoCounts(
    const std::vector<std::map<int, double>>& weights, double max_count);

struct TopicOptions {
  int k_topics = 2;
  int top_n = 5;
  int iterations = 500;
  double alpha = 0.1;
  double beta = 0.01;
  double max_pseudo_count = 10.0;
  uint64_t seed = 0;
};

struct TopicResult {
  std::vector<Topic> topics;
  // Set when the vocabulary was empty after stopword removal and a single
  // raw-frequency topic was returned instead.
  bool degenerate = false;
};

// Top terms are the terms with nonzero topic counts, by count, then summed
// TF-IDF weight, then key. Fewer than top_n terms are returned when the
// topic holds fewer.
absl::StatusOr<TopicResult> LdaTopics(
    const std::vector<std::string>& texts, const TopicOptions& options,
    const std::unordered_set<std::string>& stopwords);

}  // namespace ctiaug

#endif  // CTIAUG_TOPICS_H_
