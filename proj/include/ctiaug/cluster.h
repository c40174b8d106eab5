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

// HDBSCAN (Campello, Moulavi and Sander) over small per-class point sets:
// core distances, mutual reachability, a Prim minimum spanning tree, the
// single-linkage hierarchy, condensation by minimum cluster size and
// excess-of-mass cluster selection.
//
// min_samples counts neighbours excluding the point itself, so
// min_samples = k here corresponds to k + 1 in scikit-learn.

#ifndef CTIAUG_CLUSTER_H_
#define CTIAUG_CLUSTER_H_

#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ctiaug/embed.h"

namespace ctiaug {

struct ClusterParams {
  int min_cluster_size = 5;
  int min_samples = 5;
};

absl::Status ValidateClusterParams(const ClusterParams& params);

struct Clustering {
  std::vector<int> labels;  // -1 for noise, otherwise 0..n_clusters-1.
  std::vector<double> probabilities;
  int n_clusters = 0;
  // True when the class was too small or came out all noise and every point
  // was put into one pseudo-cluster.
  bool fallback = false;

  std::vector<int> Members(int cluster_id) const;
};

// Distance from each point to its min_samples-th nearest other point.
absl::StatusOr<std::vector<double>> CoreDistances(
    std::span<const EmbeddingVector> points, int min_samples);

inline double MutualReachability(double core_a, double core_b,
                                 double distance) {
  return std::max({core_a, core_b, distance});
}

struct MstEdge {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

// Dense Prim's algorithm over the mutual reachability graph, starting at
// point 0. Returns n - 1 edges in insertion order.
std::vector<MstEdge> MutualReachabilityMst(
    std::span<const EmbeddingVector> points, std::span<const double> core);

// scipy-style linkage row; nodes >= n are merges, numbered in row order.
struct LinkageRow {
  int left = 0;
  int right = 0;
  double distance = 0.0;
  int size = 0;
};

std::vector<LinkageRow> SingleLinkage(std::vector<MstEdge> mst, int n_points);

struct CondensedRow {
  int parent = 0;
  int child = 0;
  double lambda = 0.0;  // 1 / distance; +inf at distance 0.
  int child_size = 0;
};

// Cluster nodes are numbered from n_points (the root) upwards.
std::vector<CondensedRow> CondenseTree(const std::vector<LinkageRow>& linkage,
                                       int min_cluster_size);

Clustering HdbscanCluster(std::span<const EmbeddingVector> points,
                          const ClusterParams& params);

// Member indices of a cluster by membership probability, descending; ties go
// to the lower index.
absl::StatusOr<std::vector<int>> RankByMembership(const Clustering& clustering,
                                                  int cluster_id);

// One `{"index", "label", "probability"}` object per line.
std::string ClusteringDebugJsonl(const Clustering& clustering);

}  // namespace ctiaug

#endif  // CTIAUG_CLUSTER_H_
