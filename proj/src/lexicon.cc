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

#include "ctiaug/lexicon.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "ctiaug/corpus.h"
#include "ctiaug/status_macros.h"
#include "ctiaug/text_util.h"

namespace ctiaug {
namespace {

// "word(a)" markers on adjective lemmas.
std::string StripLemmaMarker(std::string lemma) {
  if (auto paren = lemma.find('('); paren != std::string::npos) {
    lemma.resize(paren);
  }
  return AsciiLower(lemma);
}

}  // namespace

void SynonymDatabase::Add(const std::string& word, const std::string& synonym) {
  const std::string w = AsciiLower(word);
  const std::string s = AsciiLower(synonym);
  if (w.empty() || s.empty() || w == s) return;
  synonyms_[w].insert(s);
}

std::vector<std::string> SynonymDatabase::Synonyms(
    const std::string& word) const {
  auto it = synonyms_.find(AsciiLower(word));
  if (it == synonyms_.end()) return {};
  return {it->second.begin(), it->second.end()};
}

bool SynonymDatabase::Contains(const std::string& word) const {
  return synonyms_.contains(AsciiLower(word));
}

absl::StatusOr<SynonymDatabase> SynonymDatabase::LoadWordNet(
    const std::string& dir) {
  SynonymDatabase db;
  int parts = 0;
  for (const char* pos : {"noun", "verb", "adj", "adv"}) {
    auto index = ReadFile((std::filesystem::path(dir) / absl::StrCat("index.", pos)).string());
    auto data = ReadFile((std::filesystem::path(dir) / absl::StrCat("data.", pos)).string());
    if (!index.ok() || !data.ok()) continue;
    ++parts;

    // data line: offset lex_filenum ss_type w_cnt(hex) {word lex_id}...
    std::map<std::string, std::vector<std::string>> synsets;
    for (std::string_view line : SplitOn(*data, '\n')) {
      if (line.empty() || line[0] == ' ') continue;
      std::vector<std::string_view> f = SplitOn(line, ' ', true);
      if (f.size() < 4) continue;
      const int w_cnt = static_cast<int>(
          std::strtol(std::string(f[3]).c_str(), nullptr, 16));
      if (w_cnt <= 0) continue;
      std::vector<std::string> words;
      for (int i = 0; i < w_cnt && 4 + 2 * static_cast<size_t>(i) < f.size(); ++i) {
        std::string lemma = StripLemmaMarker(std::string(f[4 + 2 * i]));
        if (lemma.find('_') == std::string::npos) words.push_back(lemma);
      }
      synsets[std::string(f[0])] = std::move(words);
    }

    // index line: lemma pos synset_cnt p_cnt [ptr...] sense_cnt tagsense_cnt
    // offset...
    for (std::string_view line : SplitOn(*index, '\n')) {
      if (line.empty() || line[0] == ' ') continue;
      std::vector<std::string_view> f = SplitOn(line, ' ', true);
      if (f.size() < 4) continue;
      const std::string lemma = AsciiLower(f[0]);
      if (lemma.find('_') != std::string::npos) continue;
      int synset_cnt = 0;
      int p_cnt = 0;
      if (!absl::SimpleAtoi(Sv(f[2]), &synset_cnt) || !absl::SimpleAtoi(Sv(f[3]), &p_cnt)) {
        continue;
      }
      const size_t first_offset = 4 + static_cast<size_t>(p_cnt) + 2;
      for (int s = 0; s < synset_cnt && first_offset + s < f.size(); ++s) {
        auto synset = synsets.find(std::string(f[first_offset + s]));
        if (synset == synsets.end()) continue;
        for (const std::string& word : synset->second) db.Add(lemma, word);
      }
    }
  }
  if (parts == 0) {
    return absl::NotFoundError(
        absl::StrCat("no WordNet index/data files under ", dir));
  }
  return db;
}

absl::StatusOr<SynonymDatabase> SynonymDatabase::LoadTsv(
    const std::string& path) {
  ASSIGN_OR_RETURN(std::string content, ReadFile(path));
  SynonymDatabase db;
  int line_no = 0;
  for (std::string_view line : SplitOn(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string_view> f = SplitOn(line, '\t');
    if (f.size() != 2) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_no, ": expected word<TAB>synonym"));
    }
    db.Add(NormalizeWhitespace(f[0]), NormalizeWhitespace(f[1]));
  }
  return db;
}

absl::StatusOr<SynonymDatabase> SynonymDatabase::Load(const std::string& path) {
  if (std::filesystem::is_directory(path)) return LoadWordNet(path);
  return LoadTsv(path);
}

absl::StatusOr<FrequencyTable> FrequencyTable::Load(const std::string& path) {
  ASSIGN_OR_RETURN(std::string content, ReadFile(path));
  FrequencyTable table;
  int line_no = 0;
  for (std::string_view line : SplitOn(content, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string_view> f = SplitOn(line, '\t');
    double zipf = 0.0;
    if (f.size() != 2 || !absl::SimpleAtod(Sv(f[1]), &zipf)) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_no, ": expected word<TAB>zipf"));
    }
    table.Set(AsciiLower(f[0]), zipf);
  }
  return table;
}

double FrequencyTable::Zipf(const std::string& word) const {
  auto it = zipf_.find(AsciiLower(word));
  return it == zipf_.end() ? 0.0 : it->second;
}

std::vector<std::string> KeywordsFromKeyphrases(
    const std::vector<std::string>& keyphrases) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& phrase : keyphrases) {
    for (const Token& t : WordTokens(phrase)) {
      if (seen.insert(t.key).second) out.push_back(t.key);
    }
  }
  return out;
}

absl::StatusOr<std::vector<SynonymCandidate>> RankSynonyms(
    const std::string& keyword, const SynonymDatabase& lexdb,
    const FrequencyTable& freq, EmbeddingProvider& provider,
    const SynonymOptions& options) {
  std::vector<std::string> synonyms = lexdb.Synonyms(keyword);
  if (synonyms.empty()) return std::vector<SynonymCandidate>{};
  std::vector<std::string> texts = synonyms;
  texts.push_back(keyword);
  ASSIGN_OR_RETURN(EmbeddingSet embs, provider.Embed(texts));
  ASSIGN_OR_RETURN(EmbeddingVector keyword_vec, embs.Get(keyword));

  std::vector<SynonymCandidate> out;
  for (const std::string& s : synonyms) {
    ASSIGN_OR_RETURN(EmbeddingVector syn_vec, embs.Get(s));
    ASSIGN_OR_RETURN(double cosine, CosineSimilarity(keyword_vec, syn_vec));
    SynonymCandidate c;
    c.keyword = keyword;
    c.synonym = s;
    c.cosine = cosine;
    c.zipf = freq.Zipf(s);
    c.score = SynonymScore(c.cosine, c.zipf, options);
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SynonymCandidate& a, const SynonymCandidate& b) {
                     return a.score > b.score;
                   });
  return out;
}

absl::StatusOr<std::vector<std::string>> ScoreSynonyms(
    const std::vector<std::string>& keywords, const SynonymDatabase& lexdb,
    const FrequencyTable& freq, EmbeddingProvider& provider,
    const SynonymOptions& options, std::vector<std::string>* missing) {
  std::vector<SynonymCandidate> pooled;
  std::set<std::string> keyword_keys;
  for (const auto& k : keywords) keyword_keys.insert(AsciiLower(k));
  for (const std::string& keyword : keywords) {
    if (!lexdb.Contains(keyword)) {
      if (missing != nullptr) missing->push_back(keyword);
      continue;
    }
    ASSIGN_OR_RETURN(std::vector<SynonymCandidate> ranked,
                     RankSynonyms(AsciiLower(keyword), lexdb, freq, provider,
                                  options));
    const size_t take =
        std::min(ranked.size(), static_cast<size_t>(std::max(0, options.per_keyword)));
    pooled.insert(pooled.end(), ranked.begin(), ranked.begin() + take);
  }
  std::stable_sort(pooled.begin(), pooled.end(),
                   [](const SynonymCandidate& a, const SynonymCandidate& b) {
                     return a.score > b.score;
                   });
  std::vector<std::string> out;
  std::set<std::string> emitted;
  for (const auto& c : pooled) {
    if (keyword_keys.contains(c.synonym)) continue;
    if (emitted.insert(c.synonym).second) out.push_back(c.synonym);
  }
  return out;
}

}  // namespace ctiaug
