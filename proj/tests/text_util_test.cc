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

#include "gmock/gmock.h"
#include "gtest/gtest.h"

namespace ctiaug {
namespace {

using ::testing::ElementsAre;

std::vector<std::string> Keys(const std::vector<Token>& tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) out.push_back(t.key);
  return out;
}

TEST(SplitOnTest, KeepsOrSkipsEmptyPieces) {
  EXPECT_THAT(SplitOn("a,,b", ','), ElementsAre("a", "", "b"));
  EXPECT_THAT(SplitOn("a,,b,", ',', true), ElementsAre("a", "b"));
  EXPECT_THAT(SplitOn("", ','), ElementsAre(""));
}

TEST(NormalizeTest, WhitespaceAndCase) {
  EXPECT_EQ(NormalizeWhitespace("  a \t b\n\nc  "), "a b c");
  EXPECT_EQ(DedupeKey(" The  Adversary "), "the adversary");
  EXPECT_EQ(AsciiLower("NinjaCopy"), "ninjacopy");
}

TEST(WordTokensTest, SplitsOnPunctuation) {
  const auto tokens = WordTokens("Utilities, such as NinjaCopy, exist.");
  EXPECT_THAT(Keys(tokens), ElementsAre("utilities", "such", "as", "ninjacopy", "exist"));
  EXPECT_EQ(tokens[3].surface, "NinjaCopy");
}

TEST(WordTokensTest, KeepsUtf8Bytes) {
  EXPECT_THAT(Keys(WordTokens("caf\xc3\xa9 ok")), ElementsAre("caf\xc3\xa9", "ok"));
}

TEST(WhitespaceTokensTest, KeepsPunctuation) {
  EXPECT_THAT(WhitespaceTokens(" a, b.  c "), ElementsAre("a,", "b.", "c"));
}

TEST(ContentTokensTest, DropsStopwordsAndShortTokens) {
  const auto tokens = ContentTokens(
      "This technique bypasses Windows file access controls as well as file "
      "system monitoring tools.",
      DefaultStopwords());
  EXPECT_THAT(Keys(tokens), ElementsAre("technique", "bypasses", "windows", "file",
                                        "access", "controls", "file",
                                        "monitoring", "tools"));
}

TEST(DisplayFormTest, KeepsInnerCapitals) {
  EXPECT_EQ(DisplayForm({"PowerShell", "powershell"}), "PowerShell");
  EXPECT_EQ(DisplayForm({"APT", "apt"}), "APT");
  EXPECT_EQ(DisplayForm({"Windows", "windows"}), "windows");
  EXPECT_EQ(DisplayForm({"file", "file"}), "file");
}

TEST(SentencesTest, SplitsOnTerminalPunctuation) {
  EXPECT_THAT(SplitSentences("It is a cat. The cat sat! Why?"),
              ElementsAre("It is a cat.", "The cat sat!", "Why?"));
  EXPECT_EQ(CountSentences("no terminal punctuation"), 1);
  EXPECT_EQ(CountSentences("Version 1.2 was used."), 1);
  EXPECT_EQ(CountSentences("..."), 0);
}

}  // namespace
}  // namespace ctiaug
