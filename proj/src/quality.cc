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

#include "ctiaug/quality.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ctiaug/status_macros.h"
#include "ctiaug/text_util.h"

namespace ctiaug {
namespace {

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts CountNgrams(const std::vector<std::string>& tokens, int n) {
  NgramCounts counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    ++counts[std::vector<std::string>(tokens.begin() + i, tokens.begin() + i + n)];
  }
  return counts;
}

std::vector<std::string> BleuTokens(const std::string& text) {
  std::vector<std::string> out;
  for (const Token& t : WordTokens(text)) out.push_back(t.key);
  return out;
}

absl::Status CheckLabelled(std::span<const EmbeddingVector> points,
                           std::span<const std::string> labels) {
  if (points.size() != labels.size()) {
    return absl::InvalidArgumentError("points and labels differ in length");
  }
  std::set<std::string> distinct(labels.begin(), labels.end());
  if (distinct.size() < 2) {
    return absl::InvalidArgumentError("need at least two classes");
  }
  for (const auto& p : points) {
    if (p.dim() != points[0].dim()) {
      return absl::InvalidArgumentError("dimension mismatch");
    }
  }
  return absl::OkStatus();
}

std::map<std::string, std::vector<size_t>> GroupByLabel(
    std::span<const std::string> labels) {
  std::map<std::string, std::vector<size_t>> groups;
  for (size_t i = 0; i < labels.size(); ++i) groups[labels[i]].push_back(i);
  return groups;
}

}  // namespace

std::string_view StrengthName(Strength strength) {
  switch (strength) {
    case Strength::kStrong:
      return "strong";
    case Strength::kWeak:
      return "weak";
    case Strength::kIntermediate:
      return "intermediate";
  }
  return "intermediate";
}

Strength ClassifyStrength(double silhouette, double davies_bouldin,
                          double cosine_distance) {
  if (silhouette >= 0.17 && davies_bouldin < 2.0 && cosine_distance >= 0.10) {
    return Strength::kStrong;
  }
  if (silhouette < 0.05 && davies_bouldin >= 7.0 && cosine_distance <= 0.03) {
    return Strength::kWeak;
  }
  return Strength::kIntermediate;
}

absl::StatusOr<std::map<std::string, double>> SilhouettePerClass(
    std::span<const EmbeddingVector> points,
    std::span<const std::string> labels) {
  RETURN_IF_ERROR(CheckLabelled(points, labels));
  const auto groups = GroupByLabel(labels);
  const size_t n = points.size();
  std::vector<double> dist(n * n, 0.0);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      dist[i * n + j] = dist[j * n + i] = Euclidean(points[i], points[j]);
    }
  }
  std::map<std::string, double> result;
  for (const auto& [label, members] : groups) {
    if (members.size() == 1) {
      result[label] = 0.0;
      continue;
    }
    double total = 0.0;
    for (size_t i : members) {
      double a = 0.0;
      for (size_t j : members) a += dist[i * n + j];
      a /= static_cast<double>(members.size() - 1);
      double b = std::numeric_limits<double>::infinity();
      for (const auto& [other, other_members] : groups) {
        if (other == label) continue;
        double sum = 0.0;
        for (size_t j : other_members) sum += dist[i * n + j];
        b = std::min(b, sum / static_cast<double>(other_members.size()));
      }
      const double denom = std::max(a, b);
      total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    result[label] = total / static_cast<double>(members.size());
  }
  return result;
}

absl::StatusOr<DaviesBouldinResult> DaviesBouldin(
    std::span<const EmbeddingVector> points,
    std::span<const std::string> labels) {
  RETURN_IF_ERROR(CheckLabelled(points, labels));
  const auto groups = GroupByLabel(labels);
  std::vector<std::string> names;
  std::vector<EmbeddingVector> centroids;
  std::vector<double> spread;
  for (const auto& [label, members] : groups) {
    std::vector<EmbeddingVector> vs;
    for (size_t i : members) vs.push_back(points[i]);
    EmbeddingVector c = Mean(vs);
    double s = 0.0;
    for (const auto& v : vs) s += Euclidean(v, c);
    names.push_back(label);
    centroids.push_back(std::move(c));
    spread.push_back(s / static_cast<double>(vs.size()));
  }
  DaviesBouldinResult result;
  const double inf = std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (size_t i = 0; i < names.size(); ++i) {
    double worst = 0.0;
    for (size_t j = 0; j < names.size(); ++j) {
      if (i == j) continue;
      const double m = Euclidean(centroids[i], centroids[j]);
      const double r = m > 0.0 ? (spread[i] + spread[j]) / m : inf;
      worst = std::max(worst, r);
    }
    result.per_class[names[i]] = worst;
    sum += worst;
  }
  result.index = sum / static_cast<double>(names.size());
  return result;
}

absl::StatusOr<double> OrigSynthCosineDistance(
    std::span<const EmbeddingVector> originals,
    std::span<const EmbeddingVector> synthetic, CosineMode mode) {
  if (originals.empty() || synthetic.empty()) {
    return absl::InvalidArgumentError("cosine distance needs both sides");
  }
  double total = 0.0;
  if (mode == CosineMode::kCentroid) {
    ASSIGN_OR_RETURN(const EmbeddingVector centroid, Centroid(originals));
    for (const auto& s : synthetic) {
      ASSIGN_OR_RETURN(const double d, CosineDistance(s, centroid));
      total += d;
    }
    return total / static_cast<double>(synthetic.size());
  }
  for (const auto& s : synthetic) {
    for (const auto& o : originals) {
      ASSIGN_OR_RETURN(const double d, CosineDistance(s, o));
      total += d;
    }
  }
  return total / static_cast<double>(synthetic.size() * originals.size());
}

double SentenceBleu(const std::vector<std::string>& hypothesis,
                    const std::vector<std::vector<std::string>>& references,
                    int max_n) {
  if (hypothesis.empty() || references.empty() || max_n < 1) return 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const NgramCounts hyp = CountNgrams(hypothesis, n);
    NgramCounts max_ref;
    for (const auto& ref : references) {
      for (const auto& [gram, count] : CountNgrams(ref, n)) {
        int& slot = max_ref[gram];
        slot = std::max(slot, count);
      }
    }
    double matched = 0.0;
    double total = 0.0;
    for (const auto& [gram, count] : hyp) {
      total += count;
      auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(count, it->second);
    }
    if (n == 1 && matched == 0.0) return 0.0;
    const double p = n == 1 ? matched / total : (matched + 1.0) / (total + 1.0);
    log_sum += std::log(p) / static_cast<double>(max_n);
  }
  const double c = static_cast<double>(hypothesis.size());
  double r = 0.0;
  double best_gap = std::numeric_limits<double>::infinity();
  for (const auto& ref : references) {
    const double len = static_cast<double>(ref.size());
    const double gap = std::abs(len - c);
    if (gap < best_gap || (gap == best_gap && len < r)) {
      best_gap = gap;
      r = len;
    }
  }
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum);
}

std::optional<double> SelfBleu(const std::vector<std::string>& texts,
                               int max_n) {
  if (texts.size() < 2) return std::nullopt;
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(texts.size());
  for (const auto& t : texts) tokens.push_back(BleuTokens(t));
  double total = 0.0;
  for (size_t i = 0; i < tokens.size(); ++i) {
    std::vector<std::vector<std::string>> refs;
    refs.reserve(tokens.size() - 1);
    for (size_t j = 0; j < tokens.size(); ++j) {
      if (j != i) refs.push_back(tokens[j]);
    }
    total += SentenceBleu(tokens[i], refs, max_n);
  }
  return total / static_cast<double>(tokens.size());
}

absl::StatusOr<std::vector<ClassQuality>> EvaluateQuality(
    const std::vector<LabeledSentence>& manifest,
    const EmbeddingSet& embeddings, const QualityOptions& options) {
  struct ClassRows {
    std::vector<EmbeddingVector> original;
    std::vector<EmbeddingVector> synthetic;
    std::vector<std::string> synthetic_texts;
  };
  std::map<std::string, ClassRows> classes;
  std::vector<EmbeddingVector> points;
  std::vector<std::string> labels;
  for (const auto& row : manifest) {
    if (row.split == Split::kTest) continue;
    const EmbeddingVector* v = embeddings.Find(row.text);
    if (v == nullptr) {
      return absl::NotFoundError(
          absl::StrCat("no embedding for manifest row: ", row.text));
    }
    ClassRows& c = classes[row.technique_id];
    const bool synthetic = row.split == Split::kSynthetic;
    if (synthetic) {
      c.synthetic.push_back(*v);
      c.synthetic_texts.push_back(row.text);
    } else {
      c.original.push_back(*v);
    }
    if (synthetic || options.grouping == QualityGrouping::kJoint) {
      points.push_back(*v);
      labels.push_back(row.technique_id);
    }
  }

  std::vector<ClassQuality> rows;
  bool any_synthetic = false;
  for (const auto& [label, c] : classes) any_synthetic |= !c.synthetic.empty();
  if (!any_synthetic) return rows;

  ASSIGN_OR_RETURN(const auto silhouette, SilhouettePerClass(points, labels));
  ASSIGN_OR_RETURN(const DaviesBouldinResult db, DaviesBouldin(points, labels));
  for (const auto& [label, c] : classes) {
    if (c.synthetic.empty()) continue;
    ClassQuality q;
    q.technique_id = label;
    q.silhouette = silhouette.at(label);
    q.davies_bouldin = db.per_class.at(label);
    q.n_original = static_cast<int>(c.original.size());
    q.n_synthetic = static_cast<int>(c.synthetic.size());
    if (c.original.empty()) {
      return absl::FailedPreconditionError(
          absl::StrCat("class ", label, " has synthetic rows but no originals"));
    }
    ASSIGN_OR_RETURN(q.cosine_distance,
                     OrigSynthCosineDistance(c.original, c.synthetic,
                                             options.cosine_mode));
    q.self_bleu = SelfBleu(c.synthetic_texts, options.self_bleu_max_n);
    q.strength = ClassifyStrength(q.silhouette, q.davies_bouldin,
                                  q.cosine_distance);
    rows.push_back(std::move(q));
  }
  return rows;
}

nlohmann::ordered_json ClassQualityToJson(const ClassQuality& quality) {
  nlohmann::ordered_json j;
  j["technique_id"] = quality.technique_id;
  j["silhouette"] = quality.silhouette;
  // JSON has no infinity; coincident centroids are written as "inf".
  if (std::isinf(quality.davies_bouldin)) {
    j["davies_bouldin"] = "inf";
  } else {
    j["davies_bouldin"] = quality.davies_bouldin;
  }
  j["cosine_distance"] = quality.cosine_distance;
  if (quality.self_bleu.has_value()) {
    j["self_bleu"] = *quality.self_bleu;
  } else {
    j["self_bleu"] = nullptr;
  }
  j["strength"] = StrengthName(quality.strength);
  j["n_original"] = quality.n_original;
  j["n_synthetic"] = quality.n_synthetic;
  return j;
}

std::string QualityJsonl(const std::vector<ClassQuality>& rows) {
  std::string out;
  for (const auto& row : rows) {
    absl::StrAppend(&out, ClassQualityToJson(row).dump(), "\n");
  }
  return out;
}

std::string DiversityCsv(const std::vector<ClassQuality>& rows) {
  std::string out = "technique_id,cosine_distance,self_bleu,strength\n";
  for (const auto& row : rows) {
    const std::string bleu =
        row.self_bleu.has_value() ? absl::StrFormat("%.6f", *row.self_bleu) : "";
    absl::StrAppend(&out, row.technique_id, ",",
                    absl::StrFormat("%.6f", row.cosine_distance), ",", bleu,
                    ",", Sv(StrengthName(row.strength)), "\n");
  }
  return out;
}

absl::StatusOr<std::string> ProjectionFile(
    const std::vector<LabeledSentence>& manifest,
    const EmbeddingSet& embeddings) {
  std::string out = absl::StrCat("dim=", embeddings.dim(), "\n");
  for (const auto& row : manifest) {
    if (row.split == Split::kTest) continue;
    const EmbeddingVector* v = embeddings.Find(row.text);
    if (v == nullptr) {
      return absl::NotFoundError(
          absl::StrCat("no embedding for manifest row: ", row.text));
    }
    absl::StrAppend(&out, row.technique_id, "\t",
                    row.split == Split::kSynthetic ? "synthetic" : "original",
                    "\t", EncodeFloats(*v), "\n");
  }
  return out;
}

}  // namespace ctiaug
