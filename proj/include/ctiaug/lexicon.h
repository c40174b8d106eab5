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

// Lexical resources: a synonym database (WordNet data files or a TSV) and a
// Zipf word-frequency table, plus frequency-weighted synonym scoring.

#ifndef CTIAUG_LEXICON_H_
#define CTIAUG_LEXICON_H_

#include <map>
#include <set>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ctiaug/embedding_provider.h"

namespace ctiaug {

class SynonymDatabase {
 public:
  SynonymDatabase() = default;

  // Reads index.{noun,verb,adj,adv} and data.{noun,verb,adj,adv} from a
  // WordNet dict directory. Missing parts of speech are skipped; at least
  // one pair must be present. Multi-word lemmas are ignored.
  static absl::StatusOr<SynonymDatabase> LoadWordNet(const std::string& dir);

  // `word<TAB>synonym` per line; '#' starts a comment.
  static absl::StatusOr<SynonymDatabase> LoadTsv(const std::string& path);

  // Directory -> WordNet, file -> TSV.
  static absl::StatusOr<SynonymDatabase> Load(const std::string& path);

  void Add(const std::string& word, const std::string& synonym);

  // Sorted, lowercase, never containing `word` itself.
  std::vector<std::string> Synonyms(const std::string& word) const;
  bool Contains(const std::string& word) const;
  size_t size() const { return synonyms_.size(); }

 private:
  std::map<std::string, std::set<std::string>> synonyms_;
};

class FrequencyTable {
 public:
  FrequencyTable() = default;

  // `word<TAB>zipf` per line.
  static absl::StatusOr<FrequencyTable> Load(const std::string& path);

  void Set(const std::string& word, double zipf) { zipf_[word] = zipf; }

  // 0 for unknown words.
  double Zipf(const std::string& word) const;

 private:
  std::map<std::string, double> zipf_;
};

struct SynonymOptions {
  double alpha = 0.3;
  int per_keyword = 3;
  double zipf_scale = 8.0;
};

struct SynonymCandidate {
  std::string keyword;
  std::string synonym;
  double cosine = 0.0;
  double zipf = 0.0;
  double score = 0.0;
};

// cos(e_w, e_s) + alpha * zipf(s) / zipf_scale.
inline double SynonymScore(double cosine, double zipf,
                           const SynonymOptions& options) {
  return cosine + options.alpha * (zipf / options.zipf_scale);
}

// Unigram keywords from keyphrases: each phrase split into lowercase words,
// first occurrence kept.
std::vector<std::string> KeywordsFromKeyphrases(
    const std::vector<std::string>& keyphrases);

// Every database synonym of `keyword`, scored and sorted by score descending
// (ties by synonym).
absl::StatusOr<std::vector<SynonymCandidate>> RankSynonyms(
    const std::string& keyword, const SynonymDatabase& lexdb,
    const FrequencyTable& freq, EmbeddingProvider& provider,
    const SynonymOptions& options);

// Top `per_keyword` synonyms of each keyword, pooled in score order,
// deduplicated, with any synonym equal to a keyword dropped. Keywords absent
// from the database are appended to `missing` when given.
absl::StatusOr<std::vector<std::string>> ScoreSynonyms(
    const std::vector<std::string>& keywords, const SynonymDatabase& lexdb,
    const FrequencyTable& freq, EmbeddingProvider& provider,
    const SynonymOptions& options, std::vector<std::string>* missing = nullptr);

}  // namespace ctiaug

#endif  // CTIAUG_LEXICON_H_
