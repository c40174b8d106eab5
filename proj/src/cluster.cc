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

#include "ctiaug/cluster.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"

namespace ctiaug {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Clustering FallbackClustering(size_t n) {
  Clustering c;
  c.labels.assign(n, 0);
  c.probabilities.assign(n, 1.0);
  c.n_clusters = n == 0 ? 0 : 1;
  c.fallback = true;
  return c;
}

// Breadth-first listing of the linkage subtree under `root`.
std::vector<int> BfsFromLinkage(const std::vector<LinkageRow>& linkage,
                                int n_points, int root) {
  std::vector<int> order;
  std::deque<int> queue = {root};
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    order.push_back(node);
    if (node >= n_points) {
      const LinkageRow& row = linkage[node - n_points];
      queue.push_back(row.left);
      queue.push_back(row.right);
    }
  }
  return order;
}

}  // namespace

absl::Status ValidateClusterParams(const ClusterParams& params) {
  if (params.min_cluster_size < 2) {
    return absl::InvalidArgumentError("min_cluster_size must be >= 2");
  }
  if (params.min_samples < 1) {
    return absl::InvalidArgumentError("min_samples must be >= 1");
  }
  if (params.min_samples > params.min_cluster_size) {
    return absl::InvalidArgumentError(
        "min_samples must not exceed min_cluster_size");
  }
  return absl::OkStatus();
}

std::vector<int> Clustering::Members(int cluster_id) const {
  std::vector<int> out;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == cluster_id) out.push_back(static_cast<int>(i));
  }
  return out;
}

absl::StatusOr<std::vector<double>> CoreDistances(
    std::span<const EmbeddingVector> points, int min_samples) {
  const int n = static_cast<int>(points.size());
  if (min_samples < 1) {
    return absl::InvalidArgumentError("min_samples must be >= 1");
  }
  if (n <= min_samples) {
    return absl::InvalidArgumentError(absl::StrCat(
        "too few points: ", n, " points for min_samples=", min_samples));
  }
  std::vector<double> core(n);
  std::vector<double> row;
  row.reserve(n - 1);
  for (int i = 0; i < n; ++i) {
    row.clear();
    for (int j = 0; j < n; ++j) {
      if (j != i) row.push_back(Euclidean(points[i], points[j]));
    }
    std::nth_element(row.begin(), row.begin() + (min_samples - 1), row.end());
    core[i] = row[min_samples - 1];
  }
  return core;
}

std::vector<MstEdge> MutualReachabilityMst(
    std::span<const EmbeddingVector> points, std::span<const double> core) {
  const int n = static_cast<int>(points.size());
  std::vector<MstEdge> edges;
  if (n < 2) return edges;
  edges.reserve(n - 1);
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, kInf);
  std::vector<int> source(n, 0);
  int current = 0;
  for (int step = 0; step < n - 1; ++step) {
    in_tree[current] = true;
    int next = -1;
    for (int j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double w = MutualReachability(core[current], core[j],
                                          Euclidean(points[current], points[j]));
      if (w < best[j]) {
        best[j] = w;
        source[j] = current;
      }
      if (next < 0 || best[j] < best[next]) next = j;
    }
    edges.push_back({source[next], next, best[next]});
    current = next;
  }
  return edges;
}

std::vector<LinkageRow> SingleLinkage(std::vector<MstEdge> mst, int n_points) {
  std::stable_sort(mst.begin(), mst.end(),
                   [](const MstEdge& a, const MstEdge& b) {
                     return a.weight < b.weight;
                   });
  std::vector<int> parent(2 * n_points - 1);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> size(2 * n_points - 1, 1);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<LinkageRow> linkage;
  linkage.reserve(mst.size());
  int next_node = n_points;
  for (const MstEdge& e : mst) {
    const int a = find(e.from);
    const int b = find(e.to);
    linkage.push_back({a, b, e.weight, size[a] + size[b]});
    parent[a] = next_node;
    parent[b] = next_node;
    size[next_node] = size[a] + size[b];
    ++next_node;
  }
  return linkage;
}

std::vector<CondensedRow> CondenseTree(const std::vector<LinkageRow>& linkage,
                                       int min_cluster_size) {
  const int n_points = static_cast<int>(linkage.size()) + 1;
  const int root = 2 * n_points - 2;
  std::vector<int> relabel(root + 1, 0);
  relabel[root] = n_points;
  int next_label = n_points + 1;
  std::vector<bool> ignore(root + 1, false);
  std::vector<CondensedRow> result;

  auto size_of = [&](int node) {
    return node >= n_points ? linkage[node - n_points].size : 1;
  };
  auto drop_points = [&](int subtree, int parent_label, double lambda) {
    for (int sub : BfsFromLinkage(linkage, n_points, subtree)) {
      if (sub < n_points) result.push_back({parent_label, sub, lambda, 1});
      ignore[sub] = true;
    }
  };

  for (int node : BfsFromLinkage(linkage, n_points, root)) {
    if (ignore[node] || node < n_points) continue;
    const LinkageRow& row = linkage[node - n_points];
    const double lambda = row.distance > 0.0 ? 1.0 / row.distance : kInf;
    const int left_count = size_of(row.left);
    const int right_count = size_of(row.right);
    const bool left_big = left_count >= min_cluster_size;
    const bool right_big = right_count >= min_cluster_size;

    if (left_big && right_big) {
      relabel[row.left] = next_label++;
      result.push_back({relabel[node], relabel[row.left], lambda, left_count});
      relabel[row.right] = next_label++;
      result.push_back({relabel[node], relabel[row.right], lambda, right_count});
    } else if (!left_big && !right_big) {
      drop_points(row.left, relabel[node], lambda);
      drop_points(row.right, relabel[node], lambda);
    } else if (!left_big) {
      relabel[row.right] = relabel[node];
      drop_points(row.left, relabel[node], lambda);
    } else {
      relabel[row.left] = relabel[node];
      drop_points(row.right, relabel[node], lambda);
    }
  }
  return result;
}

Clustering HdbscanCluster(std::span<const EmbeddingVector> points,
                          const ClusterParams& params) {
  const int n = static_cast<int>(points.size());
  if (n < params.min_cluster_size || n < 2) return FallbackClustering(n);

  const int min_samples = std::min(params.min_samples, n - 1);
  std::vector<double> core = *CoreDistances(points, min_samples);
  std::vector<MstEdge> mst = MutualReachabilityMst(points, core);
  std::vector<LinkageRow> linkage = SingleLinkage(std::move(mst), n);
  std::vector<CondensedRow> tree = CondenseTree(linkage, params.min_cluster_size);
  if (tree.empty()) return FallbackClustering(n);

  const int root = n;
  int max_node = root;
  for (const auto& r : tree) max_node = std::max({max_node, r.parent, r.child});

  // Stability: sum over children of (lambda - birth(parent)) * size.
  std::vector<double> birth(max_node + 1, 0.0);
  std::vector<int> parent_of(max_node + 1, -1);
  for (const auto& r : tree) {
    birth[r.child] = r.lambda;
    parent_of[r.child] = r.parent;
  }
  birth[root] = 0.0;
  std::map<int, double> stability;
  for (const auto& r : tree) stability[r.parent] = 0.0;
  for (const auto& r : tree) {
    stability[r.parent] += (r.lambda - birth[r.parent]) * r.child_size;
  }

  // Excess of mass, leaves first (child ids exceed parent ids). The root is
  // never selectable.
  std::map<int, std::vector<int>> cluster_children;
  for (const auto& r : tree) {
    if (r.child_size > 1) cluster_children[r.parent].push_back(r.child);
  }
  std::map<int, bool> selected;
  for (const auto& [node, s] : stability) {
    if (node != root) selected[node] = true;
  }
  for (auto it = stability.rbegin(); it != stability.rend(); ++it) {
    const int node = it->first;
    if (node == root) continue;
    double subtree = 0.0;
    for (int child : cluster_children[node]) subtree += stability[child];
    if (subtree > stability[node]) {
      selected[node] = false;
      stability[node] = subtree;
    } else {
      std::deque<int> queue(cluster_children[node].begin(),
                            cluster_children[node].end());
      while (!queue.empty()) {
        const int sub = queue.front();
        queue.pop_front();
        selected[sub] = false;
        for (int c : cluster_children[sub]) queue.push_back(c);
      }
    }
  }

  std::map<int, int> label_of;
  for (const auto& [node, is_selected] : selected) {
    if (is_selected) label_of.emplace(node, static_cast<int>(label_of.size()));
  }
  if (label_of.empty()) return FallbackClustering(n);

  Clustering out;
  out.n_clusters = static_cast<int>(label_of.size());
  out.labels.assign(n, -1);
  out.probabilities.assign(n, 0.0);
  std::vector<int> selected_node(n, -1);
  for (int p = 0; p < n; ++p) {
    for (int node = parent_of[p]; node >= 0; node = parent_of[node]) {
      auto hit = label_of.find(node);
      if (hit != label_of.end()) {
        out.labels[p] = hit->second;
        selected_node[p] = node;
        break;
      }
    }
  }

  // Membership strength: the point's exit lambda relative to the cluster's
  // death lambda. The death lambda is taken, as scikit-learn does, from the
  // last contiguous run of condensed rows sharing that parent, so for
  // parents whose rows are split across the breadth-first order it can be
  // smaller than the true maximum and more points saturate at 1.
  std::vector<double> death(max_node + 1, 0.0);
  for (size_t i = 0; i < tree.size();) {
    const int parent = tree[i].parent;
    double max_lambda = tree[i].lambda;
    size_t j = i + 1;
    for (; j < tree.size() && tree[j].parent == parent; ++j) {
      max_lambda = std::max(max_lambda, tree[j].lambda);
    }
    death[parent] = max_lambda;
    i = j;
  }
  for (const auto& r : tree) {
    if (r.child >= root) continue;
    const int node = selected_node[r.child];
    if (node < 0) continue;
    const double max_lambda = death[node];
    if (max_lambda == 0.0 || std::isinf(r.lambda)) {
      out.probabilities[r.child] = 1.0;
    } else {
      out.probabilities[r.child] = std::min(r.lambda, max_lambda) / max_lambda;
    }
  }
  return out;
}

absl::StatusOr<std::vector<int>> RankByMembership(const Clustering& clustering,
                                                  int cluster_id) {
  if (cluster_id < 0 || cluster_id >= clustering.n_clusters) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown cluster id ", cluster_id));
  }
  std::vector<int> members = clustering.Members(cluster_id);
  std::stable_sort(members.begin(), members.end(), [&](int a, int b) {
    return clustering.probabilities[a] > clustering.probabilities[b];
  });
  return members;
}

std::string ClusteringDebugJsonl(const Clustering& clustering) {
  std::string out;
  for (size_t i = 0; i < clustering.labels.size(); ++i) {
    nlohmann::ordered_json j;
    j["index"] = i;
    j["label"] = clustering.labels[i];
    j["probability"] = clustering.probabilities[i];
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace ctiaug
