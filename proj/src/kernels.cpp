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

#include "privgraph/kernels.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "privgraph/union_find.hpp"

namespace privgraph::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

WeightedEdge make_edge(double len, Eigen::Index a, Eigen::Index b) {
  if (a > b) std::swap(a, b);
  return {len, static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)};
}

double nearest_distance(const Eigen::MatrixXd& a, Eigen::Index i, const Eigen::MatrixXd& b) {
  double best = kInf;
  for (Eigen::Index j = 0; j < b.rows(); ++j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const double diff = a(i, k) - b(j, k);
      acc += diff * diff;
    }
    best = std::min(best, acc);
  }
  return std::sqrt(best);
}

int nearest_center(const Eigen::MatrixXd& points, Eigen::Index i, const Eigen::MatrixXd& centers,
                   double& dist2) {
  int best = 0;
  dist2 = kInf;
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < points.cols(); ++k) {
      const double diff = points(i, k) - centers(c, k);
      acc += diff * diff;
    }
    if (acc < dist2) {
      dist2 = acc;
      best = static_cast<int>(c);
    }
  }
  return best;
}

void csr_row(const CsrAdjacency& A, const Eigen::VectorXd& x, Eigen::VectorXd& y, Eigen::Index i) {
  double acc = 0.0;
  for (std::int64_t p = A.offsets[i]; p < A.offsets[i + 1]; ++p) acc += x[A.columns[p]];
  y[i] = acc;
}

}  // namespace

std::vector<WeightedEdge> minimum_spanning_tree(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  std::vector<WeightedEdge> tree;
  if (n < 2) return tree;
  tree.reserve(static_cast<std::size_t>(n - 1));

  // key[w]: lightest known edge from the tree to w.
  std::vector<WeightedEdge> key(static_cast<std::size_t>(n), WeightedEdge{kInf, 0, 0});
  std::vector<char> in_tree(static_cast<std::size_t>(n), 0);
  Eigen::Index current = 0;
  in_tree[0] = 1;

  for (Eigen::Index step = 1; step < n; ++step) {
    WeightedEdge best{kInf, std::numeric_limits<std::int32_t>::max(),
                      std::numeric_limits<std::int32_t>::max()};
    Eigen::Index best_vertex = -1;
#pragma omp parallel
    {
      WeightedEdge local{kInf, std::numeric_limits<std::int32_t>::max(),
                         std::numeric_limits<std::int32_t>::max()};
      Eigen::Index local_vertex = -1;
#pragma omp for schedule(static) nowait
      for (Eigen::Index w = 0; w < n; ++w) {
        if (in_tree[w]) continue;
        const WeightedEdge candidate = make_edge(row_distance(points, current, w), current, w);
        if (candidate < key[w]) key[w] = candidate;
        if (key[w] < local) {
          local = key[w];
          local_vertex = w;
        }
      }
#pragma omp critical(privgraph_prim_reduce)
      {
        if (local_vertex >= 0 && local < best) {
          best = local;
          best_vertex = local_vertex;
        }
      }
    }
    in_tree[best_vertex] = 1;
    tree.push_back(best);
    current = best_vertex;
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

std::vector<WeightedEdge> minimum_spanning_tree_serial(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  std::vector<WeightedEdge> edges;
  edges.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) edges.push_back(make_edge(row_distance(points, i, j), i, j));
  }
  std::sort(edges.begin(), edges.end());
  UnionFind uf(static_cast<std::size_t>(n));
  std::vector<WeightedEdge> tree;
  for (const WeightedEdge& e : edges) {
    if (uf.unite(static_cast<std::size_t>(e.u), static_cast<std::size_t>(e.v))) tree.push_back(e);
    if (tree.size() + 1 == static_cast<std::size_t>(n)) break;
  }
  return tree;
}

double directed_hausdorff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (Eigen::Index i = 0; i < a.rows(); ++i) worst = std::max(worst, nearest_distance(a, i, b));
  return worst;
}

double directed_hausdorff_serial(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) worst = std::max(worst, nearest_distance(a, i, b));
  return worst;
}

CsrAdjacency build_csr(const Graph& g) {
  const std::size_t n = g.num_vertices();
  CsrAdjacency A;
  A.n = static_cast<Eigen::Index>(n);
  std::vector<std::int64_t> degree(n, 0);
  const auto upper = g.upper();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (upper[k]) {
        ++degree[i];
        ++degree[j];
      }
    }
  }
  A.offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) A.offsets[i + 1] = A.offsets[i] + degree[i];
  A.columns.resize(static_cast<std::size_t>(A.offsets[n]));
  std::vector<std::int64_t> fill(A.offsets.begin(), A.offsets.end() - 1);
  // Row-major sweep of the upper triangle keeps each row's columns sorted.
  k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (upper[k]) {
        A.columns[static_cast<std::size_t>(fill[j]++)] = static_cast<std::int32_t>(i);
      }
    }
  }
  k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (upper[k]) A.columns[static_cast<std::size_t>(fill[i]++)] = static_cast<std::int32_t>(j);
    }
  }
  return A;
}

void csr_matvec(const CsrAdjacency& A, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.resize(A.n);
#pragma omp parallel for schedule(dynamic, 64)
  for (Eigen::Index i = 0; i < A.n; ++i) csr_row(A, x, y, i);
}

void csr_matvec_serial(const CsrAdjacency& A, const Eigen::VectorXd& x, Eigen::VectorXd& y) {
  y.resize(A.n);
  for (Eigen::Index i = 0; i < A.n; ++i) csr_row(A, x, y, i);
}

double assign_nearest(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                      std::vector<int>& labels) {
  const Eigen::Index n = points.rows();
  labels.resize(static_cast<std::size_t>(n));
  std::vector<double> dist2(static_cast<std::size_t>(n));
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) {
    labels[static_cast<std::size_t>(i)] = nearest_center(points, i, centers, dist2[static_cast<std::size_t>(i)]);
  }
  return std::accumulate(dist2.begin(), dist2.end(), 0.0);
}

double assign_nearest_serial(const Eigen::MatrixXd& points, const Eigen::MatrixXd& centers,
                             std::vector<int>& labels) {
  const Eigen::Index n = points.rows();
  labels.resize(static_cast<std::size_t>(n));
  std::vector<double> dist2(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    labels[static_cast<std::size_t>(i)] = nearest_center(points, i, centers, dist2[static_cast<std::size_t>(i)]);
  }
  return std::accumulate(dist2.begin(), dist2.end(), 0.0);
}

}  // namespace privgraph::kernels
