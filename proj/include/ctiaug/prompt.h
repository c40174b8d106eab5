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

// Structured generation prompts rendered from a cluster feature bundle.

#ifndef CTIAUG_PROMPT_H_
#define CTIAUG_PROMPT_H_

#include <string>

#include "absl/status/statusor.h"
#include "ctiaug/features.h"

namespace ctiaug {

// Placeholders: {preamble} {technique} {examples} {topics} {keyphrases}
// {synonyms} {count} {tone_clause} {length_hint}.
struct PromptTemplate {
  std::string body = DefaultBody();
  std::string preamble =
      "You write cybersecurity threat-intelligence sentences describing a "
      "specific adversary technique.";
  bool include_preamble = true;
  bool include_technique = false;
  // Upper bound on the rendered size; keyphrases and synonyms are trimmed
  // from the tail to fit. Few-shot examples are never trimmed.
  size_t char_budget = 8000;

  static std::string DefaultBody();
};

absl::StatusOr<PromptTemplate> LoadPromptTemplate(const std::string& path);

struct PromptSpec {
  std::string technique_id;
  int cluster_id = 0;
  ClusterFeatureBundle bundle;
  int count = 1;
  std::string rendered;
  bool truncated = false;

  // SHA-256 of the rendered text.
  std::string Hash() const;
};

// "a neutral tone" or "a mix of both neutral and formal tones".
std::string ToneClause(const std::vector<Tone>& tones);

absl::StatusOr<PromptSpec> RenderPrompt(const ClusterFeatureBundle& bundle,
                                        int count,
                                        const PromptTemplate& tmpl);

}  // namespace ctiaug

#endif  // CTIAUG_PROMPT_H_
