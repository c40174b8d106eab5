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

#include "ctiaug/corpus.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "ctiaug/rng.h"
#include "ctiaug/status_macros.h"
#include "ctiaug/text_util.h"

namespace ctiaug {

std::string_view SplitName(Split split) {
  switch (split) {
    case Split::kTrain:
      return "train";
    case Split::kTest:
      return "test";
    case Split::kSynthetic:
      return "synthetic";
  }
  return "train";
}

absl::StatusOr<Split> ParseSplit(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "test") return Split::kTest;
  if (name == "synthetic") return Split::kSynthetic;
  return absl::InvalidArgumentError(absl::StrCat("unknown split '", Sv(name), "'"));
}

bool IsValidTechniqueId(std::string_view id) {
  auto digits = [&](size_t from, size_t n) {
    if (id.size() < from + n) return false;
    for (size_t i = from; i < from + n; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(id[i]))) return false;
    }
    return true;
  };
  if (id.size() != 5 && id.size() != 9) return false;
  if (id[0] != 'T' || !digits(1, 4)) return false;
  if (id.size() == 5) return true;
  return id[5] == '.' && digits(6, 3);
}

absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    std::string_view content) {
  if (content.substr(0, 3) == "\xEF\xBB\xBF") content.remove_prefix(3);
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_row = [&] {
    end_field();
    // Skip blank lines.
    if (!(row.size() == 1 && row[0].empty())) rows.push_back(std::move(row));
    row.clear();
  };
  for (size_t i = 0; i < content.size(); ++i) {
    const char c = content[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < content.size() && content[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          return absl::InvalidArgumentError(
              absl::StrCat("stray quote in CSV at byte ", i));
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        break;
      case '\n':
        end_row();
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) return absl::InvalidArgumentError("unterminated quoted field");
  if (field_started || !field.empty() || !row.empty()) end_row();
  return rows;
}

absl::StatusOr<LoadResult> ParseCorpusCsv(std::string_view content,
                                          const LoadOptions& options) {
  ASSIGN_OR_RETURN(auto rows, ParseCsv(content));
  if (rows.empty()) return absl::InvalidArgumentError("CSV has no header row");
  const std::vector<std::string>& header = rows.front();
  auto column = [&](const std::string& name) -> int {
    auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const int text_col = column(options.columns.sentence);
  const int label_col = column(options.columns.label);
  if (text_col < 0 || label_col < 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "missing required column(s): expected '", options.columns.sentence,
        "' and '", options.columns.label, "'"));
  }

  LoadResult result;
  std::set<std::pair<std::string, std::string>> seen;
  for (size_t r = 1; r < rows.size(); ++r) {
    const auto& fields = rows[r];
    const int row_number = static_cast<int>(r);
    if (static_cast<int>(fields.size()) <= std::max(text_col, label_col)) {
      result.rejects.push_back({row_number, "missing field"});
      continue;
    }
    std::string text = NormalizeWhitespace(fields[text_col]);
    std::string label = NormalizeWhitespace(fields[label_col]);
    if (text.empty()) {
      result.rejects.push_back({row_number, "empty sentence"});
      continue;
    }
    if (!IsValidTechniqueId(label)) {
      result.rejects.push_back({row_number, "malformed label"});
      continue;
    }
    if (options.drop_duplicates && !seen.emplace(text, label).second) {
      continue;
    }
    result.sentences.push_back({std::move(text), std::move(label), Split::kTrain});
  }
  return result;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return absl::DataLossError(absl::StrCat("cannot read ", path));
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, std::string_view content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::PermissionDeniedError(absl::StrCat("cannot write ", path));
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

absl::StatusOr<LoadResult> LoadCorpus(const std::string& path,
                                      const LoadOptions& options) {
  ASSIGN_OR_RETURN(std::string content, ReadFile(path));
  return ParseCorpusCsv(content, options);
}

absl::StatusOr<TrainTestSplit> StratifiedSplit(
    const std::vector<LabeledSentence>& corpus, double test_fraction,
    uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    return absl::InvalidArgumentError("test_fraction must lie in (0, 1)");
  }
  if (corpus.empty()) return absl::InvalidArgumentError("empty corpus");

  std::map<std::string, std::vector<size_t>> by_class;
  for (size_t i = 0; i < corpus.size(); ++i) {
    by_class[corpus[i].technique_id].push_back(i);
  }
  std::vector<bool> is_test(corpus.size(), false);
  for (auto& [label, indices] : by_class) {
    const size_t n = indices.size();
    // The epsilon guards products such as 0.29 * 100 = 28.999999999999996.
    const size_t n_test = static_cast<size_t>(
        std::floor(static_cast<double>(n) * test_fraction + 1e-9));
    Rng rng(DeriveSeed(seed, label));
    for (size_t i = n; i > 1; --i) {
      std::swap(indices[i - 1], indices[rng.Below(i)]);
    }
    for (size_t i = 0; i < n_test; ++i) is_test[indices[i]] = true;
  }

  TrainTestSplit out;
  for (size_t i = 0; i < corpus.size(); ++i) {
    LabeledSentence s = corpus[i];
    s.split = is_test[i] ? Split::kTest : Split::kTrain;
    (is_test[i] ? out.test : out.train).push_back(std::move(s));
  }
  return out;
}

absl::StatusOr<ClassStats> ComputeClassStats(
    const std::vector<LabeledSentence>& corpus) {
  if (corpus.empty()) return absl::InvalidArgumentError("empty corpus");
  ClassStats stats;
  for (const auto& s : corpus) ++stats.counts[s.technique_id];
  stats.m = static_cast<int>(stats.counts.size());
  long total = 0;
  for (const auto& [label, n] : stats.counts) total += n;
  stats.mu = static_cast<double>(total) / stats.m;
  return stats;
}

Budget AugmentationBudget(const ClassStats& stats) {
  Budget budget;
  const int target = static_cast<int>(std::ceil(stats.mu - 1e-12));
  for (const auto& [label, n] : stats.counts) {
    budget.quotas[label] = std::max(0, target - n);
  }
  return budget;
}

nlohmann::ordered_json SentenceToJson(const LabeledSentence& sentence) {
  nlohmann::ordered_json j;
  j["text"] = sentence.text;
  j["label"] = sentence.technique_id;
  j["split"] = std::string(SplitName(sentence.split));
  return j;
}

absl::StatusOr<LabeledSentence> SentenceFromJson(const nlohmann::json& record) {
  if (!record.is_object() || !record.contains("text") ||
      !record.contains("label") || !record["text"].is_string() ||
      !record["label"].is_string()) {
    return absl::InvalidArgumentError("manifest record needs text and label");
  }
  LabeledSentence s;
  s.text = record["text"].get<std::string>();
  s.technique_id = record["label"].get<std::string>();
  if (record.contains("split")) {
    ASSIGN_OR_RETURN(s.split, ParseSplit(record["split"].get<std::string>()));
  }
  return s;
}

std::string ManifestToJsonl(const std::vector<LabeledSentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    out += SentenceToJson(s).dump();
    out += '\n';
  }
  return out;
}

std::string RejectsToJsonl(const std::vector<Reject>& rejects) {
  std::string out;
  for (const auto& r : rejects) {
    nlohmann::ordered_json j;
    j["row"] = r.row;
    j["reason"] = r.reason;
    out += j.dump();
    out += '\n';
  }
  return out;
}

absl::StatusOr<std::vector<LabeledSentence>> ReadManifest(
    const std::string& path) {
  ASSIGN_OR_RETURN(std::string content, ReadFile(path));
  std::vector<LabeledSentence> out;
  std::istringstream in(content);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (NormalizeWhitespace(line).empty()) continue;
    nlohmann::json record = nlohmann::json::parse(line, nullptr, false);
    if (record.is_discarded()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_no, ": invalid JSON"));
    }
    ASSIGN_OR_RETURN(LabeledSentence s, SentenceFromJson(record));
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ctiaug
