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

// Tokenization and normalization shared by the feature extractors, the
// baselines, deduplication and the Self-BLEU metric.

#ifndef CTIAUG_TEXT_UTIL_H_
#define CTIAUG_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "absl/strings/string_view.h"

namespace ctiaug {

// A word token with its original spelling and its lowercase key.
struct Token {
  std::string surface;
  std::string key;
};

// The system abseil keeps its own string_view type.
inline absl::string_view Sv(std::string_view s) { return {s.data(), s.size()}; }

// Pieces of `text` between occurrences of `delim`, optionally without empties.
std::vector<std::string_view> SplitOn(std::string_view text, char delim,
                                      bool skip_empty = false);

std::string AsciiLower(std::string_view text);

// Collapses whitespace runs to a single space and trims both ends.
std::string NormalizeWhitespace(std::string_view text);

// Lowercased, whitespace-normalized form used for duplicate detection.
std::string DedupeKey(std::string_view text);

// Splits on anything that is not an ASCII letter or digit. Bytes >= 0x80
// are kept inside tokens so UTF-8 words survive intact.
std::vector<Token> WordTokens(std::string_view text);

// Whitespace-delimited tokens, punctuation kept attached. Used by the
// random-swap baseline.
std::vector<std::string> WhitespaceTokens(std::string_view text);

// The bundled English stopword list.
const std::unordered_set<std::string>& DefaultStopwords();

// Content tokens: word tokens with stopwords and tokens shorter than two
// characters removed.
std::vector<Token> ContentTokens(std::string_view text,
                                 const std::unordered_set<std::string>& stopwords);

// Display form for a term: lowercase, except tokens carrying an uppercase
// letter after the first character (PowerShell, NinjaCopy, APT) keep their
// spelling.
std::string DisplayForm(const Token& token);

// Sentence segments of a text, split on runs of '.', '?' and '!'. A text
// without terminal punctuation counts as one sentence.
std::vector<std::string> SplitSentences(std::string_view text);

// Number of sentences per SplitSentences, at least 1 for non-empty text.
int CountSentences(std::string_view text);

}  // namespace ctiaug

#endif  // CTIAUG_TEXT_UTIL_H_
