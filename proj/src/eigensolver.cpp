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

#include "privgraph/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "privgraph/errors.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

namespace {

// Indices of `values` sorted by magnitude (descending), positive first on
// ties, then by position.
std::vector<Eigen::Index> magnitude_order(const Eigen::VectorXd& values) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(values.size()));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double ma = std::abs(values[a]);
    const double mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    return (values[a] > 0.0) && !(values[b] > 0.0);
  });
  return idx;
}

void validate_k(Eigen::Index n, int k) {
  if (k < 1 || k > n) throw ParameterError("eigensolver: need 1 <= k <= n");
}

EigenPairs select(const Eigen::VectorXd& values, const Eigen::MatrixXd& vectors, int k) {
  const auto order = magnitude_order(values);
  EigenPairs out;
  out.values.resize(k);
  out.vectors.resize(vectors.rows(), k);
  for (int c = 0; c < k; ++c) {
    out.values[c] = values[order[static_cast<std::size_t>(c)]];
    out.vectors.col(c) = vectors.col(order[static_cast<std::size_t>(c)]);
  }
  out.next_magnitude = (static_cast<Eigen::Index>(k) < values.size())
                           ? std::abs(values[order[static_cast<std::size_t>(k)]])
                           : std::numeric_limits<double>::quiet_NaN();
  return out;
}

void random_unit(Rng& rng, Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = standard_normal(rng);
  v.normalize();
}

// Two passes of classical Gram-Schmidt against the first `m` basis columns.
void reorthogonalize(const Eigen::MatrixXd& basis, Eigen::Index m, Eigen::VectorXd& w) {
  if (m == 0) return;
  for (int pass = 0; pass < 2; ++pass) {
    const Eigen::VectorXd h = basis.leftCols(m).transpose() * w;
    w.noalias() -= basis.leftCols(m) * h;
  }
}

}  // namespace

EigenPairs dense_top_eigenpairs(const Eigen::MatrixXd& m, int k) {
  validate_k(m.rows(), k);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw NumericError("dense symmetric eigensolver did not converge");
  return select(es.eigenvalues(), es.eigenvectors(), k);
}

EigenPairs lanczos_top_eigenpairs(const SymmetricOperator& op, int k, const EigenOptions& options) {
  const Eigen::Index n = op.size();
  validate_k(n, k);
  const Eigen::Index want = std::min<Eigen::Index>(n, k + 1);
  Eigen::Index target = std::min<Eigen::Index>(n, std::max<Eigen::Index>(2 * want + 20, 40));

  Rng rng(options.seed);
  // One spare column holds the next Lanczos vector.
  Eigen::MatrixXd basis(n, std::min<Eigen::Index>(n, target + 1));
  std::vector<double> alpha;
  std::vector<double> beta;
  Eigen::VectorXd v(n);
  Eigen::VectorXd w(n);
  random_unit(rng, v);
  basis.col(0) = v;
  Eigen::Index steps = 0;
  double scale = 0.0;

  Eigen::VectorXd theta;
  Eigen::MatrixXd ritz;
  std::vector<Eigen::Index> order;

  for (;;) {
    const Eigen::Index needed = std::min<Eigen::Index>(n, target + 1);
    if (basis.cols() < needed) basis.conservativeResize(Eigen::NoChange, needed);
    while (steps < target) {
      const Eigen::Index j = steps;
      v = basis.col(j);
      op.apply(v, w);
      const double a = v.dot(w);
      w.noalias() -= a * v;
      if (j > 0) w.noalias() -= beta[static_cast<std::size_t>(j - 1)] * basis.col(j - 1);
      reorthogonalize(basis, j + 1, w);
      alpha.push_back(a);
      double b = w.norm();
      scale = std::max({scale, std::abs(a), b});
      ++steps;
      if (steps == n) {
        beta.push_back(0.0);
        break;
      }
      if (b <= 1e-12 * std::max(scale, 1.0)) {
        // Invariant subspace: restart in the orthogonal complement.
        random_unit(rng, w);
        reorthogonalize(basis, steps, w);
        w.normalize();
        b = 0.0;
        beta.push_back(0.0);
        basis.col(steps) = w;
      } else {
        beta.push_back(b);
        basis.col(steps) = w / b;
      }
    }

    const Eigen::Index m = steps;
    Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m);
    Eigen::VectorXd sub = Eigen::Map<const Eigen::VectorXd>(beta.data(), m).head(m - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    if (m == 1) {
      theta = diag;
      ritz = Eigen::MatrixXd::Ones(1, 1);
    } else {
      es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
      if (es.info() != Eigen::Success) throw NumericError("Lanczos: tridiagonal eigensolver failed");
      theta = es.eigenvalues();
      ritz = es.eigenvectors();
    }
    order = magnitude_order(theta);
    const double last_beta = beta[static_cast<std::size_t>(m - 1)];
    const double top = std::max(std::abs(theta[order[0]]), std::numeric_limits<double>::min());
    bool converged = true;
    for (Eigen::Index c = 0; c < std::min(want, m); ++c) {
      const double resid = std::abs(last_beta * ritz(m - 1, order[static_cast<std::size_t>(c)]));
      if (resid > options.tolerance * top) converged = false;
    }
    if ((converged && m >= want) || m == n) break;
    target = std::min<Eigen::Index>(n, target + target / 2 + 10);
  }

  const Eigen::Index m = steps;
  EigenPairs out;
  out.used_lanczos = true;
  out.krylov_dimension = static_cast<int>(m);
  out.values.resize(k);
  out.vectors.resize(n, k);
  for (int c = 0; c < k; ++c) {
    const Eigen::Index idx = order[static_cast<std::size_t>(c)];
    out.values[c] = theta[idx];
    Eigen::VectorXd y = basis.leftCols(m) * ritz.col(idx);
    y.normalize();
    out.vectors.col(c) = y;
  }
  out.next_magnitude = (static_cast<Eigen::Index>(k) < m)
                           ? std::abs(theta[order[static_cast<std::size_t>(k)]])
                           : std::numeric_limits<double>::quiet_NaN();

  const double top = std::max(std::abs(out.values[0]), std::numeric_limits<double>::min());
  for (int c = 0; c < k; ++c) {
    op.apply(out.vectors.col(c), w);
    const double resid = (w - out.values[c] * out.vectors.col(c)).norm();
    if (resid > 1e-6 * top) throw NumericError("Lanczos eigensolver did not converge");
  }
  return out;
}

EigenPairs top_eigenpairs_by_magnitude(const SymmetricOperator& op, int k, const EigenOptions& options) {
  if (op.size() <= options.dense_threshold) return dense_top_eigenpairs(op.to_dense(), k);
  return lanczos_top_eigenpairs(op, k, options);
}

}  // namespace privgraph
