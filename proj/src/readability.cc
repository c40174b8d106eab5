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

#include "ctiaug/readability.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ctiaug/text_util.h"

namespace ctiaug {
namespace {

bool IsVowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u' || c == 'y';
}

const std::map<std::string, int>& SyllableExceptions() {
  static const auto* const kTable = new std::map<std::string, int>{
      {"people", 2},   {"element", 3},  {"elements", 3},   {"business", 2}, {"every", 2},   {"area", 3},
      {"idea", 3},     {"create", 2},   {"created", 3}, {"creates", 2},
      {"being", 2},    {"doing", 2},    {"going", 2},   {"science", 2},
      {"quiet", 2},    {"poem", 2},     {"lion", 2},    {"ruin", 2},
      {"fluid", 2},    {"cruel", 2},    {"via", 2},     {"api", 3},
      {"anyone", 3},   {"someone", 2},  {"everyone", 3}, {"whereas", 2},
      {"somewhere", 2}, {"therefore", 2}, {"furthermore", 3}, {"more", 1},
      {"before", 2},   {"are", 1},      {"were", 1},    {"there", 1},
      {"where", 1},    {"here", 1},     {"one", 1},     {"once", 1},
  };
  return *kTable;
}

}  // namespace

int CountSyllables(std::string_view raw) {
  std::string w;
  for (char c : raw) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      w.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
  }
  if (w.empty()) return 0;
  if (auto it = SyllableExceptions().find(w); it != SyllableExceptions().end()) {
    return it->second;
  }

  const size_t n = w.size();
  int count = 0;
  bool in_group = false;
  for (size_t i = 0; i < n; ++i) {
    // A leading 'y' is a consonant ("yes", "year").
    const bool vowel = IsVowel(w[i]) && !(i == 0 && w[i] == 'y');
    if (vowel && !in_group) ++count;
    in_group = vowel;
  }

  auto ends_with = [&](std::string_view suffix) {
    return n >= suffix.size() && std::string_view(w).substr(n - suffix.size()) == suffix;
  };
  auto consonant_at = [&](size_t i) { return !IsVowel(w[i]); };

  if (count > 1 && ends_with("e") && !ends_with("ee")) {
    // "table", "little": the consonant + le ending keeps its syllable.
    const bool syllabic_le = ends_with("le") && n >= 3 && consonant_at(n - 3);
    if (!syllabic_le) --count;
  } else if (count > 1 && ends_with("ed") && n > 3 && consonant_at(n - 3) &&
             w[n - 3] != 't' && w[n - 3] != 'd') {
    --count;  // "walked", "used"
  } else if (count > 1 && ends_with("es") && n > 3) {
    const char before = w[n - 3];
    const bool sibilant = before == 's' || before == 'x' || before == 'z' ||
                          before == 'c' || before == 'g' ||
                          (before == 'h' && n > 4 &&
                           (w[n - 4] == 'c' || w[n - 4] == 's'));
    const bool que = before == 'u' && n > 4 && w[n - 4] == 'q';
    if ((consonant_at(n - 3) && !sibilant) || que) --count;  // "makes"
  }

  // Silent e closing a stem before a consonant suffix: "lately", "statement".
  for (std::string_view suffix : {"ly", "ment", "ments", "ful", "ness", "less"}) {
    if (!ends_with(suffix) || n < suffix.size() + 3) continue;
    const size_t e = n - suffix.size() - 1;
    const bool syllabic_le = w[e - 1] == 'l' && consonant_at(e - 2);
    if (count > 1 && w[e] == 'e' && consonant_at(e - 1) && !syllabic_le) --count;
    break;
  }

  // Vowel pairs that are usually two syllables.
  for (size_t i = 1; i + 1 < n; ++i) {
    const char a = w[i];
    const char b = w[i + 1];
    const char prev = w[i - 1];
    if (a == 'i' && b == 'a' && prev != 'c' && prev != 't' && prev != 's' &&
        prev != 'g') {
      ++count;  // "media", "via"
    } else if (a == 'i' && b == 'o' && prev != 't' && prev != 's' &&
               prev != 'c' && prev != 'x' && prev != 'g') {
      ++count;  // "radio", "period"
    } else if (a == 'e' && b == 'o') {
      ++count;  // "video"
    } else if (a == 'u' && b == 'a' && prev != 'q' && prev != 'g') {
      ++count;  // "actual", "usual"
    }
  }
  return std::max(1, count);
}

TextCounts CountText(std::string_view text) {
  TextCounts counts;
  for (const Token& t : WordTokens(text)) {
    const bool has_letter = std::any_of(t.key.begin(), t.key.end(), [](char c) {
      return std::isalpha(static_cast<unsigned char>(c));
    });
    if (!has_letter) continue;
    const int syllables = CountSyllables(t.key);
    ++counts.words;
    counts.syllables += syllables;
    if (syllables >= 3) ++counts.complex_words;
  }
  counts.sentences = CountSentences(text);
  return counts;
}

absl::StatusOr<double> FleschReadingEase(std::string_view text) {
  const TextCounts c = CountText(text);
  if (c.words == 0) return absl::InvalidArgumentError("text has no words");
  return 206.835 - 1.015 * (static_cast<double>(c.words) / c.sentences) -
         84.6 * (static_cast<double>(c.syllables) / c.words);
}

absl::StatusOr<double> GunningFog(std::string_view text) {
  const TextCounts c = CountText(text);
  if (c.words == 0) return absl::InvalidArgumentError("text has no words");
  return 0.4 * (static_cast<double>(c.words) / c.sentences +
                100.0 * static_cast<double>(c.complex_words) / c.words);
}

std::string_view ToneName(Tone tone) {
  switch (tone) {
    case Tone::kFormal:
      return "formal";
    case Tone::kNeutral:
      return "neutral";
    case Tone::kInformal:
      return "informal";
  }
  return "neutral";
}

absl::StatusOr<Tone> ParseTone(std::string_view name) {
  if (name == "formal") return Tone::kFormal;
  if (name == "neutral") return Tone::kNeutral;
  if (name == "informal") return Tone::kInformal;
  return absl::InvalidArgumentError(absl::StrCat("unknown tone '", Sv(name), "'"));
}

Tone FleschTone(double flesch) {
  if (flesch < 30.0) return Tone::kFormal;
  if (flesch > 60.0) return Tone::kInformal;
  return Tone::kNeutral;
}

Tone FogTone(double fog) {
  if (fog > 12.0) return Tone::kFormal;
  if (fog < 9.0) return Tone::kInformal;
  return Tone::kNeutral;
}

std::pair<Tone, Tone> ClassifyTone(double flesch, double fog) {
  return {FleschTone(flesch), FogTone(fog)};
}

std::vector<Tone> ClusterTone(const std::vector<Tone>& labels, double margin) {
  std::array<int, 3> counts = {0, 0, 0};
  for (Tone t : labels) ++counts[static_cast<int>(t)];
  std::array<Tone, 3> order = {Tone::kFormal, Tone::kNeutral, Tone::kInformal};
  std::stable_sort(order.begin(), order.end(), [&](Tone a, Tone b) {
    return counts[static_cast<int>(a)] > counts[static_cast<int>(b)];
  });
  const int top = counts[static_cast<int>(order[0])];
  const int second = counts[static_cast<int>(order[1])];
  if (top == 0) return {Tone::kNeutral};
  if (second == 0) return {order[0]};
  const double total = static_cast<double>(labels.size());
  if (top - second >= margin * total - 1e-9) return {order[0]};
  return {order[0], order[1]};
}

}  // namespace ctiaug
