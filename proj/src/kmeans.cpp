// Copyright 2026 The privgraph Authors
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

#include "privgraph/clustering.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <unordered_map>

#include "privgraph/errors.hpp"
#include "privgraph/kernels.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

namespace {

double squared_distance(const Eigen::MatrixXd& a, Eigen::Index i, const Eigen::MatrixXd& b, Eigen::Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

Eigen::MatrixXd plus_plus_seeding(const Eigen::MatrixXd& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  Eigen::MatrixXd centers(k, points.cols());
  auto first = static_cast<Eigen::Index>(uniform01(rng) * static_cast<double>(n));
  first = std::min(first, n - 1);
  centers.row(0) = points.row(first);
  std::vector<double> d2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) d2[i] = squared_distance(points, i, centers, 0);
  for (int c = 1; c < k; ++c) {
    double total = 0.0;
    for (double v : d2) total += v;
    Eigen::Index pick = n - 1;
    if (total > 0.0) {
      double target = uniform01(rng) * total;
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= d2[i];
        if (target < 0.0 && d2[i] > 0.0) {
          pick = i;
          break;
        }
      }
      // Rounding can exhaust the loop; fall back to the last positive weight.
      if (d2[pick] == 0.0) {
        for (Eigen::Index i = n - 1; i >= 0; --i) {
          if (d2[i] > 0.0) {
            pick = i;
            break;
          }
        }
      }
    } else {
      pick = std::min(static_cast<Eigen::Index>(uniform01(rng) * static_cast<double>(n)), n - 1);
    }
    centers.row(c) = points.row(pick);
    for (Eigen::Index i = 0; i < n; ++i) d2[i] = std::min(d2[i], squared_distance(points, i, centers, c));
  }
  return centers;
}

KMeansResult lloyd(const Eigen::MatrixXd& points, Eigen::MatrixXd centers, int max_iterations) {
  const Eigen::Index n = points.rows();
  const auto k = static_cast<int>(centers.rows());
  std::vector<int> labels;
  std::vector<int> previous;
  double wcss = kernels::assign_nearest(points, centers, labels);
  for (int iter = 0; iter < max_iterations; ++iter) {
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, points.cols());
    std::vector<Eigen::Index> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(labels[i]) += points.row(i);
      ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(c) = sums.row(c) / static_cast<double>(counts[c]);
        continue;
      }
      Eigen::Index far = 0;
      double best = -1.0;
      for (Eigen::Index i = 0; i < n; ++i) {
        const double d = squared_distance(points, i, centers, labels[i]);
        if (d > best) {
          best = d;
          far = i;
        }
      }
      centers.row(c) = points.row(far);
      labels[far] = c;
    }
    previous = labels;
    wcss = kernels::assign_nearest(points, centers, labels);
    if (labels == previous) break;
  }
  return {labels, centers, wcss};
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& options) {
  const Eigen::Index n = points.rows();
  if (k < 1 || k > n) throw ParameterError("kmeans: need 1 <= k <= n");
  if (options.restarts < 1) throw ParameterError("kmeans: restarts must be >= 1");
  KMeansResult best;
  best.wcss = std::numeric_limits<double>::infinity();
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    KMeansResult run = lloyd(points, plus_plus_seeding(points, k, rng), options.max_iterations);
    if (run.wcss < best.wcss) best = std::move(run);
  }
  // Renumber labels by first appearance.
  std::vector<int> remap(static_cast<std::size_t>(k), -1);
  int next = 0;
  for (int& l : best.labels) {
    if (remap[l] < 0) remap[l] = next++;
    l = remap[l];
  }
  Eigen::MatrixXd centers(next, points.cols());
  for (int c = 0; c < k; ++c) {
    if (remap[c] >= 0) centers.row(remap[c]) = best.centers.row(c);
  }
  best.centers = centers;
  return best;
}

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw ParameterError("adjusted_rand_index: length mismatch");
  const auto choose2 = [](double x) { return 0.5 * x * (x - 1.0); };
  std::map<std::pair<int, int>, double> table;
  std::unordered_map<int, double> rows;
  std::unordered_map<int, double> cols;
  for (std::size_t i = 0; i < a.size(); ++i) {
    table[{a[i], b[i]}] += 1.0;
    rows[a[i]] += 1.0;
    cols[b[i]] += 1.0;
  }
  double index = 0.0;
  for (const auto& [key, count] : table) index += choose2(count);
  double sum_a = 0.0;
  for (const auto& [key, count] : rows) sum_a += choose2(count);
  double sum_b = 0.0;
  for (const auto& [key, count] : cols) sum_b += choose2(count);
  const double total = choose2(static_cast<double>(a.size()));
  if (total == 0.0) return 1.0;
  const double expected = sum_a * sum_b / total;
  const double maximum = 0.5 * (sum_a + sum_b);
  // Zero denominator only when both partitions are all-singletons or a
  // single block, i.e. identical.
  if (maximum == expected) return 1.0;
  return (index - expected) / (maximum - expected);
}

}  // namespace privgraph
