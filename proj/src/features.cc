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

#include "ctiaug/features.h"

#include <algorithm>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ctiaug/status_macros.h"
#include "ctiaug/text_util.h"

namespace ctiaug {

nlohmann::ordered_json BundleToJson(const ClusterFeatureBundle& bundle) {
  nlohmann::ordered_json j;
  j["technique_id"] = bundle.technique_id;
  j["cluster_id"] = bundle.cluster_id;
  j["few_shots"] = bundle.few_shots;
  nlohmann::ordered_json topics = nlohmann::ordered_json::array();
  for (const Topic& t : bundle.topics) {
    nlohmann::ordered_json tj;
    tj["topic_id"] = t.topic_id;
    tj["top_terms"] = t.top_terms;
    topics.push_back(std::move(tj));
  }
  j["topics"] = std::move(topics);
  j["keyphrases"] = bundle.keyphrases;
  j["synonyms"] = bundle.synonyms;
  nlohmann::ordered_json tones = nlohmann::ordered_json::array();
  for (Tone t : bundle.tones) tones.push_back(std::string(ToneName(t)));
  j["tone"] = std::move(tones);
  j["avg_sentences_per_instance"] = bundle.avg_sentences_per_instance;
  j["degenerate_topics"] = bundle.degenerate_topics;
  j["no_keyphrases"] = bundle.no_keyphrases;
  return j;
}

absl::StatusOr<ClusterFeatureBundle> BundleFromJson(const nlohmann::json& j) {
  if (!j.is_object()) return absl::InvalidArgumentError("bundle must be an object");
  ClusterFeatureBundle b;
  try {
    b.technique_id = j.value("technique_id", "");
    b.cluster_id = j.value("cluster_id", 0);
    b.few_shots = j.value("few_shots", std::vector<std::string>{});
    if (j.contains("topics")) {
      for (const auto& tj : j["topics"]) {
        b.topics.push_back({tj.value("topic_id", 0),
                            tj.value("top_terms", std::vector<std::string>{})});
      }
    }
    b.keyphrases = j.value("keyphrases", std::vector<std::string>{});
    b.synonyms = j.value("synonyms", std::vector<std::string>{});
    for (const auto& name : j.value("tone", std::vector<std::string>{})) {
      ASSIGN_OR_RETURN(Tone t, ParseTone(name));
      b.tones.push_back(t);
    }
    b.avg_sentences_per_instance = j.value("avg_sentences_per_instance", 1.0);
    b.degenerate_topics = j.value("degenerate_topics", false);
    b.no_keyphrases = j.value("no_keyphrases", false);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("bad bundle JSON: ", e.what()));
  }
  if (b.tones.empty()) return absl::InvalidArgumentError("bundle has no tone");
  return b;
}

std::vector<std::string> SelectFewShots(const std::vector<std::string>& ranked,
                                        int max_shots) {
  const size_t n = std::min(ranked.size(), static_cast<size_t>(std::max(0, max_shots)));
  return {ranked.begin(), ranked.begin() + n};
}

absl::StatusOr<std::vector<std::string>> ExtractKeyphrases(
    const std::vector<std::string>& texts, EmbeddingProvider& provider,
    int top_k, const std::unordered_set<std::string>& stopwords) {
  if (texts.empty()) return absl::InvalidArgumentError("empty cluster");

  // key -> display form, first spelling wins.
  std::map<std::string, std::string> candidates;
  for (const std::string& text : texts) {
    std::vector<Token> tokens = ContentTokens(text, stopwords);
    for (size_t i = 0; i < tokens.size(); ++i) {
      candidates.emplace(tokens[i].key, DisplayForm(tokens[i]));
      if (i + 1 < tokens.size()) {
        candidates.emplace(
            absl::StrCat(tokens[i].key, " ", tokens[i + 1].key),
            absl::StrCat(DisplayForm(tokens[i]), " ", DisplayForm(tokens[i + 1])));
      }
    }
  }
  if (candidates.empty()) return std::vector<std::string>{};

  std::vector<std::string> request = texts;
  for (const auto& [key, display] : candidates) request.push_back(display);
  ASSIGN_OR_RETURN(EmbeddingSet embs, provider.Embed(request));

  std::vector<EmbeddingVector> sentence_vecs;
  for (const auto& text : texts) {
    ASSIGN_OR_RETURN(EmbeddingVector v, embs.Get(text));
    sentence_vecs.push_back(std::move(v));
  }
  ASSIGN_OR_RETURN(EmbeddingVector centroid, Centroid(sentence_vecs));

  struct Scored {
    std::string key;
    std::string display;
    double cosine;
  };
  std::vector<Scored> scored;
  for (const auto& [key, display] : candidates) {
    ASSIGN_OR_RETURN(EmbeddingVector v, embs.Get(display));
    ASSIGN_OR_RETURN(double c, CosineSimilarity(v, centroid));
    scored.push_back({key, display, c});
  }
  // `candidates` iterates in key order, so stable_sort breaks ties by key.
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.cosine > b.cosine; });
  if (static_cast<int>(scored.size()) > top_k) scored.resize(std::max(0, top_k));
  std::sort(scored.begin(), scored.end(),
            [](const Scored& a, const Scored& b) { return a.key < b.key; });
  std::vector<std::string> out;
  for (auto& s : scored) out.push_back(std::move(s.display));
  return out;
}

absl::StatusOr<double> TextType(const std::vector<std::string>& texts) {
  if (texts.empty()) return absl::InvalidArgumentError("empty cluster");
  double total = 0.0;
  for (const auto& t : texts) total += CountSentences(t);
  return total / static_cast<double>(texts.size());
}

std::vector<Tone> ToneLabels(const std::vector<std::string>& texts) {
  std::vector<Tone> labels;
  for (const auto& text : texts) {
    auto flesch = FleschReadingEase(text);
    auto fog = GunningFog(text);
    if (!flesch.ok() || !fog.ok()) continue;
    auto [a, b] = ClassifyTone(*flesch, *fog);
    labels.push_back(a);
    labels.push_back(b);
  }
  return labels;
}

absl::StatusOr<ClusterFeatureBundle> ExtractFeatures(
    const std::string& technique_id, int cluster_id,
    const std::vector<std::string>& ranked_texts,
    const FeatureResources& resources, const FeatureOptions& options) {
  if (ranked_texts.empty()) return absl::InvalidArgumentError("empty cluster");
  if (resources.provider == nullptr || resources.lexdb == nullptr ||
      resources.freq == nullptr) {
    return absl::FailedPreconditionError("feature resources not loaded");
  }
  const auto& stopwords =
      resources.stopwords != nullptr ? *resources.stopwords : DefaultStopwords();

  ClusterFeatureBundle b;
  b.technique_id = technique_id;
  b.cluster_id = cluster_id;
  b.few_shots = SelectFewShots(ranked_texts, options.few_shots);

  ASSIGN_OR_RETURN(TopicResult topics,
                   LdaTopics(ranked_texts, options.topics, stopwords));
  b.topics = std::move(topics.topics);
  b.degenerate_topics = topics.degenerate;

  ASSIGN_OR_RETURN(b.keyphrases,
                   ExtractKeyphrases(ranked_texts, *resources.provider,
                                     options.keyphrase_top_k, stopwords));
  b.no_keyphrases = b.keyphrases.empty();

  ASSIGN_OR_RETURN(b.synonyms,
                   ScoreSynonyms(KeywordsFromKeyphrases(b.keyphrases),
                                 *resources.lexdb, *resources.freq,
                                 *resources.provider, options.synonyms));

  b.tones = ClusterTone(ToneLabels(ranked_texts), options.tone_margin);
  ASSIGN_OR_RETURN(b.avg_sentences_per_instance, TextType(ranked_texts));
  return b;
}

}  // namespace ctiaug
