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

// Data-parallel inner loops. Every OpenMP kernel has a `_serial` twin that
// is kept as the reference implementation for tests and benchmarks; the two
// produce bit-identical results because each output element is computed by
// the same arithmetic in the same order.

#ifndef PRIVGRAPH_KERNELS_HPP_
#define PRIVGRAPH_KERNELS_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "privgraph/grdpg.hpp"

namespace privgraph::kernels {

// Euclidean distance between rows i and j, evaluated in a fixed orientation
// so d(i, j) and d(j, i) are bitwise equal.
inline double row_distance(const Eigen::MatrixXd& pts, Eigen::Index i, Eigen::Index j) {
  if (i > j) std::swap(i, j);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < pts.cols(); ++k) {
    const double diff = pts(i, k) - pts(j, k);
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

// Rips edge; ordered by (length, u, v) with u < v, a strict total order.
struct WeightedEdge {
  double length = 0.0;
  std::int32_t u = 0;
  std::int32_t v = 0;

  friend bool operator<(const WeightedEdge& a, const WeightedEdge& b) {
    return std::tie(a.length, a.u, a.v) < std::tie(b.length, b.u, b.v);
  }
  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

// Minimum spanning tree of the complete Euclidean graph, edges returned in
// filtration order. Under the total edge order the tree is unique, so Prim
// (parallel) and Kruskal (serial) agree exactly.
std::vector<WeightedEdge> minimum_spanning_tree(const Eigen::MatrixXd& points);
std::vector<WeightedEdge> minimum_spanning_tree_serial(const Eigen::MatrixXd& points);

// max_i min_j |a_i - b_j|.
double directed_hausdorff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);
double directed_hausdorff_serial(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

// Compressed sparse rows of a graph's adjacency (both orientations).
struct CsrAdjacency {
  std::vector<std::int64_t> offsets;
  std::vector<std::int32_t> columns;
  Eigen::Index n = 0;
};

CsrAdjacency build_csr(const Graph& g);

// y = A x.
void csr_matvec(const CsrAdjacency& A, const Eigen::VectorXd& x, Eigen::VectorXd& y);
void csr_matvec_serial(const CsrAdjacency& A, const Eigen::VectorXd& x, Eigen::VectorXd& y);

// Index of the nearest center (squared Euclidean, ties to the lower index)
// for every row; returns the total within-cluster sum of squares.
double assign_nearest(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                      std::vector<int>& labels);
double assign_nearest_serial(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                             std::vector<int>& labels);

}  // namespace privgraph::kernels

#endif  // PRIVGRAPH_KERNELS_HPP_
