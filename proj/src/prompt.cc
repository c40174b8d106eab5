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

#include "ctiaug/prompt.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_replace.h"
#include "ctiaug/corpus.h"
#include "ctiaug/embed.h"
#include "ctiaug/status_macros.h"
#include "ctiaug/text_util.h"

namespace ctiaug {
namespace {

std::string RenderWith(const PromptTemplate& tmpl,
                       const ClusterFeatureBundle& bundle, int count,
                       size_t keyphrase_count, size_t synonym_count) {
  std::string examples;
  for (size_t i = 0; i < bundle.few_shots.size(); ++i) {
    if (i > 0) examples += "\n";
    absl::StrAppend(&examples, "- ", bundle.few_shots[i]);
  }

  std::string topics;
  for (size_t i = 0; i < bundle.topics.size(); ++i) {
    if (i > 0) topics += "\n";
    absl::StrAppend(&topics, "- **Topic ", bundle.topics[i].topic_id, "**: ",
                    absl::StrJoin(bundle.topics[i].top_terms, ", "));
  }
  if (topics.empty()) topics = "(none)";

  std::vector<std::string> keyphrases(
      bundle.keyphrases.begin(),
      bundle.keyphrases.begin() + std::min(keyphrase_count, bundle.keyphrases.size()));
  std::vector<std::string> synonyms(
      bundle.synonyms.begin(),
      bundle.synonyms.begin() + std::min(synonym_count, bundle.synonyms.size()));
  std::string keyphrase_text =
      keyphrases.empty() ? "(none)" : absl::StrJoin(keyphrases, ", ");
  std::string synonym_text =
      synonyms.empty() ? "(none)" : absl::StrJoin(synonyms, ", ");

  std::string length_hint;
  if (bundle.avg_sentences_per_instance >= 1.5) {
    length_hint = absl::StrCat(
        " Each item should contain about ",
        static_cast<int>(std::ceil(bundle.avg_sentences_per_instance - 1e-9)),
        " sentences.");
  }

  std::string preamble =
      tmpl.include_preamble && !tmpl.preamble.empty()
          ? absl::StrCat(tmpl.preamble, "\n\n")
          : "";
  std::string technique =
      tmpl.include_technique && !bundle.technique_id.empty()
          ? absl::StrCat("Technique: ", bundle.technique_id, "\n\n")
          : "";

  std::string out = absl::StrReplaceAll(
      tmpl.body, {{"{preamble}", preamble},
                  {"{technique}", technique},
                  {"{examples}", examples},
                  {"{topics}", topics},
                  {"{keyphrases}", keyphrase_text},
                  {"{synonyms}", synonym_text},
                  {"{count}", absl::StrCat(count)},
                  {"{tone_clause}", ToneClause(bundle.tones)},
                  {"{length_hint}", length_hint}});
  if (count == 1) {
    out = absl::StrReplaceAll(out, {{"generate 1 sentences", "generate 1 sentence"}});
  }
  return out;
}

}  // namespace

std::string PromptTemplate::DefaultBody() {
  return "{preamble}{technique}**Examples**\n\n"
         "{examples}\n\n"
         "**Key Topics**\n\n"
         "{topics}\n\n"
         "**Keyphrases**\n\n"
         "{keyphrases}\n\n"
         "**Synonyms Keyphrases**\n\n"
         "{synonyms}\n\n"
         "Now, generate {count} sentences using {tone_clause} based on the "
         "provided input information.{length_hint}";
}

absl::StatusOr<PromptTemplate> LoadPromptTemplate(const std::string& path) {
  ASSIGN_OR_RETURN(std::string body, ReadFile(path));
  for (const char* required : {"{examples}", "{count}", "{tone_clause}"}) {
    if (body.find(required) == std::string::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("prompt template lacks ", required));
    }
  }
  PromptTemplate tmpl;
  tmpl.body = std::move(body);
  return tmpl;
}

std::string PromptSpec::Hash() const { return ContentHash(rendered); }

std::string ToneClause(const std::vector<Tone>& tones) {
  if (tones.size() >= 2) {
    return absl::StrCat("a mix of both ", Sv(ToneName(tones[0])), " and ",
                        Sv(ToneName(tones[1])), " tones");
  }
  const Tone tone = tones.empty() ? Tone::kNeutral : tones[0];
  return absl::StrCat(tone == Tone::kInformal ? "an " : "a ",
                      Sv(ToneName(tone)), " tone");
}

absl::StatusOr<PromptSpec> RenderPrompt(const ClusterFeatureBundle& bundle,
                                        int count, const PromptTemplate& tmpl) {
  if (count < 1) return absl::InvalidArgumentError("count must be >= 1");
  if (bundle.few_shots.empty() && bundle.keyphrases.empty()) {
    return absl::FailedPreconditionError(
        "bundle has neither examples nor keyphrases to ground generation");
  }
  PromptSpec spec;
  spec.technique_id = bundle.technique_id;
  spec.cluster_id = bundle.cluster_id;
  spec.bundle = bundle;
  spec.count = count;

  size_t keyphrases = bundle.keyphrases.size();
  size_t synonyms = bundle.synonyms.size();
  spec.rendered = RenderWith(tmpl, bundle, count, keyphrases, synonyms);
  // Trim synonyms first, then keyphrases, one item at a time.
  while (spec.rendered.size() > tmpl.char_budget && (keyphrases > 0 || synonyms > 0)) {
    if (synonyms > 0) {
      --synonyms;
    } else {
      --keyphrases;
    }
    spec.truncated = true;
    spec.rendered = RenderWith(tmpl, bundle, count, keyphrases, synonyms);
  }
  return spec;
}

}  // namespace ctiaug
