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

#include "ctiaug/baselines.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "ctiaug/rng.h"
#include "ctiaug/text_util.h"

namespace ctiaug {
namespace {

int Budget(double intensity, size_t words) {
  return static_cast<int>(std::ceil(intensity * static_cast<double>(words) - 1e-9));
}

struct Span {
  size_t begin;
  size_t end;
};

std::vector<Span> WordSpans(std::string_view text) {
  std::vector<Span> spans;
  size_t i = 0;
  auto word = [&](size_t k) {
    const auto c = static_cast<unsigned char>(text[k]);
    return std::isalnum(c) || c >= 0x80;
  };
  while (i < text.size()) {
    while (i < text.size() && !word(i)) ++i;
    const size_t start = i;
    while (i < text.size() && word(i)) ++i;
    if (i > start) spans.push_back({start, i});
  }
  return spans;
}

// QWERTY neighbours for lowercase letters and digits.
const std::map<char, std::string>& KeyboardNeighbours() {
  static const auto* const kMap = new std::map<char, std::string>{
      {'q', "wa"},   {'w', "qeas"},  {'e', "wrsd"},  {'r', "etdf"},
      {'t', "ryfg"}, {'y', "tugh"},  {'u', "yihj"},  {'i', "uojk"},
      {'o', "ipkl"}, {'p', "ol"},    {'a', "qwsz"},  {'s', "awedxz"},
      {'d', "serfcx"}, {'f', "drtgvc"}, {'g', "ftyhbv"}, {'h', "gyujnb"},
      {'j', "huikmn"}, {'k', "jiolm"}, {'l', "kop"},  {'z', "asx"},
      {'x', "zsdc"}, {'c', "xdfv"},  {'v', "cfgb"},  {'b', "vghn"},
      {'n', "bhjm"}, {'m', "njk"},   {'1', "2q"},    {'2', "13w"},
      {'3', "24e"},  {'4', "35r"},   {'5', "46t"},   {'6', "57y"},
      {'7', "68u"},  {'8', "79i"},   {'9', "80o"},   {'0', "9p"},
  };
  return *kMap;
}

}  // namespace

std::string_view BaselineName(BaselineMethod method) {
  switch (method) {
    case BaselineMethod::kSynonymReplacement:
      return "synonym_replacement";
    case BaselineMethod::kRandomSwap:
      return "random_swap";
    case BaselineMethod::kCharNoise:
      return "char_noise";
  }
  return "synonym_replacement";
}

absl::StatusOr<BaselineMethod> ParseBaseline(std::string_view name) {
  if (name == "synonym_replacement") return BaselineMethod::kSynonymReplacement;
  if (name == "random_swap") return BaselineMethod::kRandomSwap;
  if (name == "char_noise") return BaselineMethod::kCharNoise;
  return absl::InvalidArgumentError(absl::StrCat("unknown baseline '", Sv(name), "'"));
}

std::string SynonymReplace(std::string_view sentence, double intensity,
                           const SynonymDatabase& lexdb, uint64_t seed) {
  const std::vector<Span> spans = WordSpans(sentence);
  const auto& stopwords = DefaultStopwords();
  std::vector<size_t> eligible;
  for (size_t i = 0; i < spans.size(); ++i) {
    const std::string key = AsciiLower(
        sentence.substr(spans[i].begin, spans[i].end - spans[i].begin));
    if (key.size() < 2 || stopwords.contains(key)) continue;
    if (!lexdb.Synonyms(key).empty()) eligible.push_back(i);
  }
  if (eligible.empty()) return std::string(sentence);

  Rng rng(seed);
  for (size_t i = eligible.size(); i > 1; --i) {
    std::swap(eligible[i - 1], eligible[rng.Below(i)]);
  }
  const size_t n_replace =
      std::min(eligible.size(), static_cast<size_t>(Budget(intensity, spans.size())));
  std::vector<size_t> chosen(eligible.begin(), eligible.begin() + n_replace);
  std::sort(chosen.begin(), chosen.end());

  std::map<size_t, std::string> replacement;
  for (size_t idx : chosen) {
    const std::string_view word =
        sentence.substr(spans[idx].begin, spans[idx].end - spans[idx].begin);
    const std::vector<std::string> synonyms = lexdb.Synonyms(AsciiLower(word));
    std::string pick = synonyms[rng.Below(synonyms.size())];
    if (std::isupper(static_cast<unsigned char>(word[0]))) {
      pick[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(pick[0])));
    }
    replacement[idx] = std::move(pick);
  }

  std::string out;
  size_t cursor = 0;
  for (const auto& [idx, word] : replacement) {
    out.append(sentence.substr(cursor, spans[idx].begin - cursor));
    out.append(word);
    cursor = spans[idx].end;
  }
  out.append(sentence.substr(cursor));
  return out;
}

std::string RandomSwap(std::string_view sentence, double intensity,
                       uint64_t seed) {
  std::vector<std::string> words = WhitespaceTokens(sentence);
  if (words.size() < 2) return std::string(sentence);
  Rng rng(seed);
  const int swaps = std::max(1, Budget(intensity, words.size()));
  for (int s = 0; s < swaps; ++s) {
    const size_t a = rng.Below(words.size());
    size_t b = rng.Below(words.size() - 1);
    if (b >= a) ++b;
    std::swap(words[a], words[b]);
  }
  return absl::StrJoin(words, " ");
}

std::string CharNoise(std::string_view sentence, double intensity,
                      uint64_t seed) {
  if (intensity <= 0.0) return std::string(sentence);
  Rng rng(seed);
  std::string out;
  out.reserve(sentence.size() + 8);
  for (size_t i = 0; i < sentence.size(); ++i) {
    const char c = sentence[i];
    if (static_cast<unsigned char>(c) >= 0x80 || !rng.Bernoulli(intensity)) {
      out.push_back(c);
      continue;
    }
    switch (rng.Below(4)) {
      case 0: {  // adjacent-key substitution
        const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        auto it = KeyboardNeighbours().find(lower);
        if (it == KeyboardNeighbours().end()) {
          out.push_back(c);
          break;
        }
        char sub = it->second[rng.Below(it->second.size())];
        if (std::isupper(static_cast<unsigned char>(c))) {
          sub = static_cast<char>(std::toupper(static_cast<unsigned char>(sub)));
        }
        out.push_back(sub);
        break;
      }
      case 1:  // deletion
        break;
      case 2:  // duplication
        out.push_back(c);
        out.push_back(c);
        break;
      default:  // transposition with the next character
        if (i + 1 < sentence.size() &&
            static_cast<unsigned char>(sentence[i + 1]) < 0x80) {
          out.push_back(sentence[i + 1]);
          out.push_back(c);
          ++i;
        } else {
          out.push_back(c);
        }
    }
  }
  return out;
}

absl::StatusOr<std::string> ApplyBaseline(const BaselineConfig& config,
                                          std::string_view sentence,
                                          const SynonymDatabase* lexdb) {
  if (!(config.intensity >= 0.0 && config.intensity <= 1.0)) {
    return absl::InvalidArgumentError("intensity must lie in [0, 1]");
  }
  switch (config.method) {
    case BaselineMethod::kSynonymReplacement:
      if (lexdb == nullptr) {
        return absl::FailedPreconditionError("synonym replacement needs a lexdb");
      }
      return SynonymReplace(sentence, config.intensity, *lexdb, config.seed);
    case BaselineMethod::kRandomSwap:
      return RandomSwap(sentence, config.intensity, config.seed);
    case BaselineMethod::kCharNoise:
      return CharNoise(sentence, config.intensity, config.seed);
  }
  return absl::InternalError("unreachable");
}

}  // namespace ctiaug
