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

// Readability scores and the tone bands derived from them.

#ifndef CTIAUG_READABILITY_H_
#define CTIAUG_READABILITY_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace ctiaug {

// Vowel-group syllable heuristic with silent-e and -ed/-es corrections, a
// handful of hiatus rules ("video", "actual") and a small exception table.
// Always >= 1 for a word containing a letter.
int CountSyllables(std::string_view word);

struct TextCounts {
  int words = 0;
  int sentences = 0;
  int syllables = 0;
  int complex_words = 0;  // >= 3 syllables
};

// Words are tokens with at least one letter; sentences follow
// SplitSentences.
TextCounts CountText(std::string_view text);

// 206.835 - 1.015 (words/sentences) - 84.6 (syllables/words).
absl::StatusOr<double> FleschReadingEase(std::string_view text);

// 0.4 ((words/sentences) + 100 (complex/words)).
absl::StatusOr<double> GunningFog(std::string_view text);

enum class Tone { kFormal, kNeutral, kInformal };

std::string_view ToneName(Tone tone);
absl::StatusOr<Tone> ParseTone(std::string_view name);

// < 30 formal, [30, 60] neutral, > 60 informal.
Tone FleschTone(double flesch);

// > 12 technical (pooled as formal), [9, 12] neutral, < 9 informal.
Tone FogTone(double fog);

// (Flesch label, Fog label).
std::pair<Tone, Tone> ClassifyTone(double flesch, double fog);

// Majority rule over pooled labels: the top label alone when it leads the
// runner-up by at least `margin` of all labels, otherwise both, top first.
// Equal counts are ordered formal, neutral, informal.
std::vector<Tone> ClusterTone(const std::vector<Tone>& labels,
                              double margin = 0.20);

}  // namespace ctiaug

#endif  // CTIAUG_READABILITY_H_
