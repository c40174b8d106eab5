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

#include "ctiaug/text_util.h"

#include <algorithm>
#include <cctype>

namespace ctiaug {
namespace {

bool IsWordByte(unsigned char c) {
  return std::isalnum(c) || c >= 0x80;
}

bool IsTerminal(char c) { return c == '.' || c == '?' || c == '!'; }

bool HasWordByte(std::string_view text) {
  return std::any_of(text.begin(), text.end(), [](char c) {
    return IsWordByte(static_cast<unsigned char>(c));
  });
}

}  // namespace

std::vector<std::string_view> SplitOn(std::string_view text, char delim,
                                      bool skip_empty) {
  std::vector<std::string_view> pieces;
  size_t start = 0;
  while (true) {
    const size_t end = text.find(delim, start);
    const std::string_view piece =
        text.substr(start, end == std::string_view::npos ? end : end - start);
    if (!skip_empty || !piece.empty()) pieces.push_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return pieces;
}

std::string AsciiLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string NormalizeWhitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

std::string DedupeKey(std::string_view text) {
  return AsciiLower(NormalizeWhitespace(text));
}

std::vector<Token> WordTokens(std::string_view text) {
  std::vector<Token> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           !IsWordByte(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    size_t start = i;
    while (i < text.size() && IsWordByte(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) {
      std::string surface(text.substr(start, i - start));
      tokens.push_back({surface, AsciiLower(surface)});
    }
  }
  return tokens;
}

std::vector<std::string> WhitespaceTokens(std::string_view text) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    size_t start = i;
    while (i < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

const std::unordered_set<std::string>& DefaultStopwords() {
  // Same list as scikit-learn's ENGLISH_STOP_WORDS.
  static const auto* const kStopwords = new std::unordered_set<std::string>{
    "a", "about", "above", "across", "after", "afterwards", "again",
    "against", "all", "almost", "alone", "along", "already", "also",
    "although", "always", "am", "among", "amongst", "amoungst",
    "amount", "an", "and", "another", "any", "anyhow", "anyone",
    "anything", "anyway", "anywhere", "are", "around", "as", "at",
    "back", "be", "became", "because", "become", "becomes", "becoming",
    "been", "before", "beforehand", "behind", "being", "below",
    "beside", "besides", "between", "beyond", "bill", "both", "bottom",
    "but", "by", "call", "can", "cannot", "cant", "co", "con",
    "could", "couldnt", "cry", "de", "describe", "detail", "do",
    "done", "down", "due", "during", "each", "eg", "eight", "either",
    "eleven", "else", "elsewhere", "empty", "enough", "etc", "even",
    "ever", "every", "everyone", "everything", "everywhere", "except",
    "few", "fifteen", "fifty", "fill", "find", "fire", "first", "five",
    "for", "former", "formerly", "forty", "found", "four", "from",
    "front", "full", "further", "get", "give", "go", "had", "has",
    "hasnt", "have", "he", "hence", "her", "here", "hereafter",
    "hereby", "herein", "hereupon", "hers", "herself", "him", "himself",
    "his", "how", "however", "hundred", "i", "ie", "if", "in", "inc",
    "indeed", "interest", "into", "is", "it", "its", "itself", "keep",
    "last", "latter", "latterly", "least", "less", "ltd", "made",
    "many", "may", "me", "meanwhile", "might", "mill", "mine", "more",
    "moreover", "most", "mostly", "move", "much", "must", "my",
    "myself", "name", "namely", "neither", "never", "nevertheless",
    "next", "nine", "no", "nobody", "none", "noone", "nor", "not",
    "nothing", "now", "nowhere", "of", "off", "often", "on", "once",
    "one", "only", "onto", "or", "other", "others", "otherwise", "our",
    "ours", "ourselves", "out", "over", "own", "part", "per",
    "perhaps", "please", "put", "rather", "re", "same", "see", "seem",
    "seemed", "seeming", "seems", "serious", "several", "she", "should",
    "show", "side", "since", "sincere", "six", "sixty", "so", "some",
    "somehow", "someone", "something", "sometime", "sometimes",
    "somewhere", "still", "such", "system", "take", "ten", "than",
    "that", "the", "their", "them", "themselves", "then", "thence",
    "there", "thereafter", "thereby", "therefore", "therein",
    "thereupon", "these", "they", "thick", "thin", "third", "this",
    "those", "though", "three", "through", "throughout", "thru", "thus",
    "to", "together", "too", "top", "toward", "towards", "twelve",
    "twenty", "two", "un", "under", "until", "up", "upon", "us",
    "very", "via", "was", "we", "well", "were", "what", "whatever",
    "when", "whence", "whenever", "where", "whereafter", "whereas",
    "whereby", "wherein", "whereupon", "wherever", "whether", "which",
    "while", "whither", "who", "whoever", "whole", "whom", "whose",
    "why", "will", "with", "within", "without", "would", "yet", "you",
    "your", "yours", "yourself", "yourselves",
  };
  return *kStopwords;
}

std::vector<Token> ContentTokens(
    std::string_view text, const std::unordered_set<std::string>& stopwords) {
  std::vector<Token> out;
  for (Token& token : WordTokens(text)) {
    if (token.key.size() < 2 || stopwords.contains(token.key)) continue;
    out.push_back(std::move(token));
  }
  return out;
}

std::string DisplayForm(const Token& token) {
  for (size_t i = 1; i < token.surface.size(); ++i) {
    if (std::isupper(static_cast<unsigned char>(token.surface[i]))) {
      return token.surface;
    }
  }
  return token.key;
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> sentences;
  size_t start = 0;
  size_t i = 0;
  while (i < text.size()) {
    if (!IsTerminal(text[i])) {
      ++i;
      continue;
    }
    size_t run_end = i;
    while (run_end < text.size() && IsTerminal(text[run_end])) ++run_end;
    // "cmd.exe" and "2.0" are not boundaries.
    bool boundary = run_end == text.size() ||
                    std::isspace(static_cast<unsigned char>(text[run_end])) ||
                    text[run_end] == '"' || text[run_end] == '\'' ||
                    text[run_end] == ')';
    if (boundary) {
      std::string_view piece = text.substr(start, run_end - start);
      if (HasWordByte(piece)) {
        sentences.push_back(NormalizeWhitespace(piece));
      }
      start = run_end;
    }
    i = run_end;
  }
  std::string_view tail = text.substr(std::min(start, text.size()));
  if (HasWordByte(tail)) sentences.push_back(NormalizeWhitespace(tail));
  return sentences;
}

int CountSentences(std::string_view text) {
  int n = static_cast<int>(SplitSentences(text).size());
  return n == 0 && HasWordByte(text) ? 1 : n;
}

}  // namespace ctiaug
