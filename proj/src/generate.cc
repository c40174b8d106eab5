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

#include "ctiaug/generate.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <optional>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "ctiaug/text_util.h"

namespace ctiaug {
namespace {

// Returns the item text after a list marker, or nullopt.
std::optional<std::string> StripMarker(std::string_view line) {
  size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  if (i == line.size()) return std::nullopt;
  size_t body = std::string_view::npos;
  if (std::isdigit(static_cast<unsigned char>(line[i]))) {
    size_t j = i;
    while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
    if (j < line.size() && (line[j] == '.' || line[j] == ')')) body = j + 1;
  } else if (line[i] == '-' || line[i] == '*') {
    body = i + 1;
  } else if (line.substr(i, 3) == "\xE2\x80\xA2") {  // U+2022 bullet
    body = i + 3;
  }
  if (body == std::string_view::npos) return std::nullopt;
  // The marker must be followed by whitespace ("1.5 GB" is not an item).
  if (body >= line.size() || !std::isspace(static_cast<unsigned char>(line[body]))) {
    return std::nullopt;
  }
  std::string text = NormalizeWhitespace(line.substr(body));
  if (text.empty()) return std::nullopt;
  return text;
}

}  // namespace

std::map<int, int> PlanQuotas(int budget, const Clustering& clustering) {
  std::map<int, int> sizes;
  for (int label : clustering.labels) {
    if (label >= 0) ++sizes[label];
  }
  std::map<int, int> quotas;
  if (sizes.empty()) return quotas;
  int total_size = 0;
  for (const auto& [c, s] : sizes) total_size += s;

  int assigned = 0;
  int largest = sizes.begin()->first;
  for (const auto& [c, s] : sizes) {
    const int q = static_cast<int>(
        std::lround(static_cast<double>(budget) * s / total_size));
    quotas[c] = q;
    assigned += q;
    if (s > sizes[largest]) largest = c;
  }
  quotas[largest] += budget - assigned;
  // A negative residue larger than the biggest quota spills over to the
  // next largest clusters.
  while (quotas[largest] < 0) {
    int deficit = -quotas[largest];
    quotas[largest] = 0;
    std::vector<std::pair<int, int>> by_size(sizes.begin(), sizes.end());
    std::stable_sort(by_size.begin(), by_size.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    for (const auto& [c, s] : by_size) {
      const int take = std::min(deficit, quotas[c]);
      quotas[c] -= take;
      deficit -= take;
      if (deficit == 0) break;
    }
  }
  return quotas;
}

std::vector<int> ChunkQuota(int quota, int max_per_request) {
  std::vector<int> chunks;
  while (quota > 0) {
    const int n = std::min(quota, std::max(1, max_per_request));
    chunks.push_back(n);
    quota -= n;
  }
  return chunks;
}

absl::StatusOr<std::vector<std::string>> ParseGeneration(const std::string& raw) {
  std::vector<std::string> items;
  for (std::string_view line : SplitOn(raw, '\n')) {
    if (auto item = StripMarker(line)) items.push_back(*std::move(item));
  }
  if (items.empty()) {
    return absl::FailedPreconditionError("unparseable generation: no list items");
  }
  return items;
}

DedupeIndex::DedupeIndex(const std::vector<std::string>& originals) {
  for (const auto& o : originals) AddOriginal(o);
}

void DedupeIndex::AddOriginal(const std::string& text) {
  originals_.insert(DedupeKey(text));
}

bool DedupeIndex::Accept(const std::string& text) {
  const std::string key = DedupeKey(text);
  if (key.empty() || originals_.contains(key) || accepted_.contains(key)) {
    return false;
  }
  if (extra_filter_ && extra_filter_(text)) return false;
  accepted_.insert(key);
  return true;
}

std::vector<std::string> Dedupe(const std::vector<std::string>& candidates,
                                const std::vector<std::string>& originals,
                                std::vector<std::string>& accepted) {
  DedupeIndex index(originals);
  for (const auto& a : accepted) index.Accept(a);
  std::vector<std::string> kept;
  for (const auto& c : candidates) {
    if (index.Accept(c)) {
      kept.push_back(c);
      accepted.push_back(c);
    }
  }
  return kept;
}

nlohmann::ordered_json SyntheticRecordToJson(const SyntheticRecord& record) {
  nlohmann::ordered_json j;
  j["text"] = record.text;
  j["label"] = record.technique_id;
  j["split"] = "synthetic";
  j["method"] = record.method;
  j["cluster_id"] = record.cluster_id;
  j["prompt_hash"] = record.prompt_hash;
  j["attempt"] = record.attempt;
  return j;
}

ClusterGenerationResult GenerateForCluster(const PromptSpec& prompt,
                                           const PromptTemplate& tmpl,
                                           TextGenerator& generator,
                                           DedupeIndex& index,
                                           const GenerationConfig& config) {
  ClusterGenerationResult result;
  PromptSpec current = prompt;
  for (int attempt = 0; attempt <= config.max_retries; ++attempt) {
    const int shortfall = prompt.count - static_cast<int>(result.records.size());
    if (shortfall <= 0) break;
    if (attempt > 0) {
      ++result.retries;
      auto rerendered = RenderPrompt(prompt.bundle, shortfall, tmpl);
      if (!rerendered.ok()) {
        result.errors.push_back(std::string(rerendered.status().message()));
        break;
      }
      current = *std::move(rerendered);
    }
    ++result.requests;
    GenerationRequest request{current.rendered, current.count, attempt,
                              &prompt.bundle};
    auto raw = generator.Generate(request);
    if (!raw.ok()) {
      result.errors.push_back(absl::StrCat("attempt ", attempt, ": ",
                                           raw.status().message()));
      continue;
    }
    auto items = ParseGeneration(*raw);
    if (!items.ok()) {
      result.errors.push_back(absl::StrCat("attempt ", attempt, ": ",
                                           items.status().message()));
      continue;
    }
    const std::string hash = current.Hash();
    for (const std::string& item : *items) {
      if (static_cast<int>(result.records.size()) >= prompt.count) break;
      if (!index.Accept(item)) continue;
      result.records.push_back(
          {item, prompt.technique_id, prompt.cluster_id, hash, attempt});
    }
  }
  return result;
}

absl::StatusOr<std::vector<LabeledSentence>> AssembleAugmented(
    const std::vector<LabeledSentence>& train,
    const std::vector<SyntheticRecord>& synth) {
  std::set<std::string> labels;
  for (const auto& s : train) {
    if (s.split == Split::kTest) {
      return absl::InvalidArgumentError("test rows cannot be augmented");
    }
    labels.insert(s.technique_id);
  }
  std::vector<LabeledSentence> out = train;
  for (const auto& r : synth) {
    if (!labels.contains(r.technique_id)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "synthetic record labeled ", r.technique_id,
          " has no class in the training data"));
    }
    out.push_back({r.text, r.technique_id, Split::kSynthetic});
  }
  return out;
}

}  // namespace ctiaug
