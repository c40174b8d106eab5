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

#include "ctiaug/topics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ctiaug/rng.h"
#include "ctiaug/text_util.h"

namespace ctiaug {
namespace {

// Ranks term indices by (count desc, weight desc, key asc).
std::vector<int> RankTerms(const std::vector<int>& counts,
                           const std::vector<double>& weights,
                           const std::vector<std::string>& keys) {
  std::vector<int> order;
  for (int t = 0; t < static_cast<int>(counts.size()); ++t) {
    if (counts[t] > 0) order.push_back(t);
  }
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (counts[a] != counts[b]) return counts[a] > counts[b];
    if (weights[a] != weights[b]) return weights[a] > weights[b];
    return keys[a] < keys[b];
  });
  return order;
}

}  // namespace

TermDocuments BuildTermDocuments(
    const std::vector<std::string>& texts,
    const std::unordered_set<std::string>& stopwords) {
  std::vector<std::vector<std::string>> doc_terms;
  std::map<std::string, std::map<std::string, int>> spellings;
  for (const std::string& text : texts) {
    std::vector<Token> tokens = ContentTokens(text, stopwords);
    std::vector<std::string> terms;
    for (size_t i = 0; i < tokens.size(); ++i) {
      terms.push_back(tokens[i].key);
      ++spellings[tokens[i].key][DisplayForm(tokens[i])];
      if (i + 1 < tokens.size()) {
        std::string key = absl::StrCat(tokens[i].key, " ", tokens[i + 1].key);
        ++spellings[key][absl::StrCat(DisplayForm(tokens[i]), " ",
                                      DisplayForm(tokens[i + 1]))];
        terms.push_back(std::move(key));
      }
    }
    doc_terms.push_back(std::move(terms));
  }

  TermDocuments docs;
  for (const auto& [key, forms] : spellings) {
    docs.vocabulary.push_back(key);
    // Most frequent spelling; ties go to the lexicographically smallest.
    auto best = std::max_element(
        forms.begin(), forms.end(),
        [](const auto& a, const auto& b) { return a.second < b.second; });
    docs.display[key] = best->first;
  }
  std::map<std::string, int> index;
  for (size_t i = 0; i < docs.vocabulary.size(); ++i) {
    index[docs.vocabulary[i]] = static_cast<int>(i);
  }
  for (const auto& terms : doc_terms) {
    std::map<int, int> row;
    for (const auto& term : terms) ++row[index[term]];
    docs.counts.push_back(std::move(row));
  }
  return docs;
}

std::vector<std::map<int, double>> TfIdf(const TermDocuments& docs) {
  const double n = static_cast<double>(docs.counts.size());
  std::vector<int> df(docs.vocabulary.size(), 0);
  for (const auto& row : docs.counts) {
    for (const auto& [term, tf] : row) ++df[term];
  }
  std::vector<std::map<int, double>> out;
  for (const auto& row : docs.counts) {
    std::map<int, double> weights;
    double norm = 0.0;
    for (const auto& [term, tf] : row) {
      const double w = tf * (std::log((1.0 + n) / (1.0 + df[term])) + 1.0);
      weights[term] = w;
      norm += w * w;
    }
    norm = std::sqrt(norm);
    if (norm > 0.0) {
      for (auto& [term, w] : weights) w /= norm;
    }
    out.push_back(std::move(weights));
  }
  return out;
}

std::vector<std::map<int, int>> PseudoCounts(
    const std::vector<std::map<int, double>>& weights, double max_count) {
  double max_weight = 0.0;
  for (const auto& row : weights) {
    for (const auto& [term, w] : row) max_weight = std::max(max_weight, w);
  }
  std::vector<std::map<int, int>> out;
  for (const auto& row : weights) {
    std::map<int, int> counts;
    for (const auto& [term, w] : row) {
      if (w <= 0.0) continue;
      counts[term] =
          std::max(1, static_cast<int>(std::lround(w / max_weight * max_count)));
    }
    out.push_back(std::move(counts));
  }
  return out;
}

absl::StatusOr<TopicResult> LdaTopics(
    const std::vector<std::string>& texts, const TopicOptions& options,
    const std::unordered_set<std::string>& stopwords) {
  if (texts.empty()) return absl::InvalidArgumentError("no texts for topics");
  if (options.k_topics < 1 || options.top_n < 1) {
    return absl::InvalidArgumentError("k_topics and top_n must be >= 1");
  }

  TermDocuments docs = BuildTermDocuments(texts, stopwords);
  TopicResult result;
  if (docs.vocabulary.empty()) {
    // Nothing survives stopword removal: fall back to raw word frequency.
    std::map<std::string, int> freq;
    for (const auto& text : texts) {
      for (const Token& t : WordTokens(text)) ++freq[t.key];
    }
    if (freq.empty()) return absl::InvalidArgumentError("texts have no words");
    std::vector<std::pair<std::string, int>> ranked(freq.begin(), freq.end());
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    Topic topic;
    for (size_t i = 0; i < ranked.size() && static_cast<int>(i) < options.top_n; ++i) {
      topic.top_terms.push_back(ranked[i].first);
    }
    result.topics.push_back(std::move(topic));
    result.degenerate = true;
    return result;
  }

  const int k = options.k_topics;
  const int v = static_cast<int>(docs.vocabulary.size());
  const std::vector<std::map<int, double>> weights = TfIdf(docs);
  const std::vector<std::map<int, int>> pseudo =
      PseudoCounts(weights, options.max_pseudo_count);
  std::vector<double> total_weight(v, 0.0);
  for (const auto& row : weights) {
    for (const auto& [term, w] : row) total_weight[term] += w;
  }

  // Token stream: each (document, term) pair repeated pseudo-count times.
  std::vector<int> token_doc;
  std::vector<int> token_term;
  for (size_t d = 0; d < pseudo.size(); ++d) {
    for (const auto& [term, c] : pseudo[d]) {
      for (int i = 0; i < c; ++i) {
        token_doc.push_back(static_cast<int>(d));
        token_term.push_back(term);
      }
    }
  }
  const size_t n_tokens = token_term.size();
  std::vector<int> assignment(n_tokens);
  std::vector<std::vector<int>> doc_topic(pseudo.size(), std::vector<int>(k, 0));
  std::vector<std::vector<int>> topic_term(k, std::vector<int>(v, 0));
  std::vector<int> topic_total(k, 0);

  Rng rng(options.seed);
  for (size_t i = 0; i < n_tokens; ++i) {
    const int z = static_cast<int>(rng.Below(k));
    assignment[i] = z;
    ++doc_topic[token_doc[i]][z];
    ++topic_term[z][token_term[i]];
    ++topic_total[z];
  }

  std::vector<double> p(k);
  const double v_beta = v * options.beta;
  for (int iter = 0; iter < options.iterations && k > 1; ++iter) {
    for (size_t i = 0; i < n_tokens; ++i) {
      const int d = token_doc[i];
      const int w = token_term[i];
      int z = assignment[i];
      --doc_topic[d][z];
      --topic_term[z][w];
      --topic_total[z];
      double sum = 0.0;
      for (int t = 0; t < k; ++t) {
        p[t] = (doc_topic[d][t] + options.alpha) *
               (topic_term[t][w] + options.beta) / (topic_total[t] + v_beta);
        sum += p[t];
      }
      double u = rng.Uniform() * sum;
      z = k - 1;
      for (int t = 0; t < k; ++t) {
        u -= p[t];
        if (u < 0.0) {
          z = t;
          break;
        }
      }
      assignment[i] = z;
      ++doc_topic[d][z];
      ++topic_term[z][w];
      ++topic_total[z];
    }
  }

  for (int t = 0; t < k; ++t) {
    Topic topic;
    topic.topic_id = t;
    for (int term : RankTerms(topic_term[t], total_weight, docs.vocabulary)) {
      if (static_cast<int>(topic.top_terms.size()) >= options.top_n) break;
      topic.top_terms.push_back(docs.display[docs.vocabulary[term]]);
    }
    result.topics.push_back(std::move(topic));
  }
  return result;
}

}  // namespace ctiaug
