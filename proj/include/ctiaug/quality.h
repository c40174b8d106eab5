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

// Augmentation-quality metrics: per-class silhouette and Davies-Bouldin over
// class-labelled embeddings, original-vs-synthetic cosine distance, Self-BLEU
// over a class's synthetic texts, and the strong/weak classification.

#ifndef CTIAUG_QUALITY_H_
#define CTIAUG_QUALITY_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ctiaug/corpus.h"
#include "ctiaug/embed.h"
#include "json.hpp"

namespace ctiaug {

enum class Strength { kStrong, kWeak, kIntermediate };

std::string_view StrengthName(Strength strength);

// strong: silhouette >= 0.17, DB < 2.0, cosine distance >= 0.10.
// weak:   silhouette < 0.05, DB >= 7.0, cosine distance <= 0.03.
Strength ClassifyStrength(double silhouette, double davies_bouldin,
                          double cosine_distance);

// Mean silhouette of each label's points, Euclidean distance. A label with a
// single point scores 0. Fails when fewer than two labels are present or the
// inputs disagree in length.
absl::StatusOr<std::map<std::string, double>> SilhouettePerClass(
    std::span<const EmbeddingVector> points,
    std::span<const std::string> labels);

struct DaviesBouldinResult {
  double index = 0.0;                    // mean of the per-class terms
  std::map<std::string, double> per_class;  // +inf for coincident centroids
};

// S_i is the mean distance of class i to its (unnormalized) mean, M_ij the
// distance between means; each class term is max_j (S_i + S_j) / M_ij.
absl::StatusOr<DaviesBouldinResult> DaviesBouldin(
    std::span<const EmbeddingVector> points,
    std::span<const std::string> labels);

enum class CosineMode { kCentroid, kPairwise };

// kCentroid: mean over synthetic points of 1 - cos(s, centroid(originals)).
// kPairwise: mean of 1 - cos(s, o) over every (s, o) pair.
absl::StatusOr<double> OrigSynthCosineDistance(
    std::span<const EmbeddingVector> originals,
    std::span<const EmbeddingVector> synthetic,
    CosineMode mode = CosineMode::kCentroid);

// Sentence BLEU of `hypothesis` against `references` on lowercased word
// tokens. Clipped n-gram counts use the maximum count over references; orders
// n >= 2 get add-one smoothing on numerator and denominator; the brevity
// penalty uses the reference length closest to the hypothesis length.
double SentenceBleu(const std::vector<std::string>& hypothesis,
                    const std::vector<std::vector<std::string>>& references,
                    int max_n = 4);

// Mean BLEU of each text against all others. nullopt for fewer than 2 texts.
std::optional<double> SelfBleu(const std::vector<std::string>& texts,
                               int max_n = 4);

struct ClassQuality {
  std::string technique_id;
  double silhouette = 0.0;
  double davies_bouldin = 0.0;
  double cosine_distance = 0.0;
  std::optional<double> self_bleu;
  Strength strength = Strength::kIntermediate;
  int n_original = 0;
  int n_synthetic = 0;
};

enum class QualityGrouping {
  kJoint,          // original + synthetic points grouped by class
  kSyntheticOnly,  // synthetic points only
};

struct QualityOptions {
  QualityGrouping grouping = QualityGrouping::kJoint;
  CosineMode cosine_mode = CosineMode::kCentroid;
  int self_bleu_max_n = 4;
};

// One row per class that has synthetic rows, in label order. Test rows are
// ignored. Every considered text must have an embedding.
absl::StatusOr<std::vector<ClassQuality>> EvaluateQuality(
    const std::vector<LabeledSentence>& manifest,
    const EmbeddingSet& embeddings, const QualityOptions& options = {});

nlohmann::ordered_json ClassQualityToJson(const ClassQuality& quality);
std::string QualityJsonl(const std::vector<ClassQuality>& rows);
std::string DiversityCsv(const std::vector<ClassQuality>& rows);

// Header "dim=<D>", then "label<TAB>origin<TAB>base64" per train/synthetic
// row in manifest order, origin being "original" or "synthetic".
absl::StatusOr<std::string> ProjectionFile(
    const std::vector<LabeledSentence>& manifest,
    const EmbeddingSet& embeddings);

}  // namespace ctiaug

#endif  // CTIAUG_QUALITY_H_
