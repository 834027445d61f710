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

#include "privgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "privgraph/errors.hpp"

namespace privgraph {

namespace {

void validate_dim(Eigen::Index n, int d) {
  if (d < 1 || d >= n) throw ParameterError("embedding dimension must satisfy 1 <= d < n");
}

Embedding finish(EigenPairs pairs, int d) {
  Embedding e;
  const double top = std::abs(pairs.values[0]);
  if (!std::isnan(pairs.next_magnitude)) {
    const double gap = std::abs(std::abs(pairs.values[d - 1]) - pairs.next_magnitude);
    e.tie_warning = gap <= 1e-12 * std::max(top, 1.0);
  }
  canonicalize_eigenpairs(pairs.values, pairs.vectors);
  e.eigvals = pairs.values;
  e.U = std::move(pairs.vectors);
  e.eig_signs.resize(static_cast<std::size_t>(d));
  e.Xhat.resize(e.U.rows(), d);
  for (int c = 0; c < d; ++c) {
    e.eig_signs[static_cast<std::size_t>(c)] = e.eigvals[c] < 0.0 ? -1 : 1;
    e.Xhat.col(c) = e.U.col(c) * std::sqrt(std::abs(e.eigvals[c]));
  }
  return e;
}

}  // namespace

Signature Embedding::signature() const {
  const int p = static_cast<int>(std::count(eig_signs.begin(), eig_signs.end(), 1));
  return Signature(p, static_cast<int>(eig_signs.size()) - p);
}

void canonicalize_eigenpairs(Eigen::VectorXd& values, Eigen::MatrixXd& vectors) {
  const Eigen::Index d = values.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  // Input is magnitude-sorted, so a stable partition by sign yields
  // positives by descending value and negatives by descending magnitude.
  std::stable_partition(order.begin(), order.end(), [&](Eigen::Index i) { return values[i] >= 0.0; });
  Eigen::VectorXd v(d);
  Eigen::MatrixXd u(vectors.rows(), d);
  for (Eigen::Index c = 0; c < d; ++c) {
    v[c] = values[order[static_cast<std::size_t>(c)]];
    u.col(c) = vectors.col(order[static_cast<std::size_t>(c)]);
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
      if (std::abs(u(i, c)) > best) {
        best = std::abs(u(i, c));
        arg = i;
      }
    }
    if (u(arg, c) < 0.0) u.col(c) = -u.col(c);
  }
  values = std::move(v);
  vectors = std::move(u);
}

Embedding embed_operator(const SymmetricOperator& op, int d, const EigenOptions& options) {
  validate_dim(op.size(), d);
  return finish(top_eigenpairs_by_magnitude(op, d, options), d);
}

Embedding adjacency_spectral_embedding(const Eigen::MatrixXd& M, int d, const EigenOptions& options) {
  if (M.rows() != M.cols()) throw ParameterError("adjacency_spectral_embedding: matrix must be square");
  return embed_operator(DenseSymmetricOperator(M), d, options);
}

Embedding adjacency_spectral_embedding(const Graph& g, int d, const EigenOptions& options) {
  const AdjustedMatrix plain{g, privacy_params(kNoPrivacy)};
  return embed_operator(AdjustedGraphOperator(plain), d, options);
}

double AdjustedMatrix::entry(std::size_t i, std::size_t j) const {
  const double z = (i != j && Z.has_edge(i, j)) ? 1.0 : 0.0;
  return (z - params.tau2) / params.sigma2;
}

Eigen::MatrixXd AdjustedMatrix::dense() const {
  const std::size_t n = Z.num_vertices();
  const double off = (0.0 - params.tau2) / params.sigma2;
  const double on = (1.0 - params.tau2) / params.sigma2;
  Eigen::MatrixXd out = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n), off);
  const auto upper = Z.upper();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      if (upper[k]) {
        out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = on;
        out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = on;
      }
    }
  }
  return out;
}

AdjustedGraphOperator::AdjustedGraphOperator(const AdjustedMatrix& m) : m_(m), csr_(kernels::build_csr(m.Z)) {}

void AdjustedGraphOperator::apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const {
  kernels::csr_matvec(csr_, x, y);
  if (m_.params.tau2 == 0.0 && m_.params.sigma2 == 1.0) return;
  const double shift = m_.params.tau2 * x.sum();
  y = (y.array() - shift) / m_.params.sigma2;
}

AdjustedMatrix privacy_adjust(const Graph& Z, double eps) {
  const PrivacyParams params = privacy_params(eps);
  if (params.sigma2 <= 0.0) throw ParameterError("privacy_adjust: no signal at eps = 0");
  return AdjustedMatrix{Z, params};
}

double estimate_sparsity(const AdjustedMatrix& Ac) {
  if (Ac.Z.num_vertices() < 2) throw ParameterError("estimate_sparsity: need n >= 2");
  const double density = static_cast<double>(Ac.Z.num_edges()) / static_cast<double>(Ac.Z.num_pairs());
  return (density - Ac.params.tau2) / Ac.params.sigma2;
}

Eigen::MatrixXd PaseResult::rescaled() const {
  if (!rescale_valid) throw NumericError("pase: rho_check <= 0, rescaled estimate unavailable");
  return embedding.Xhat / std::sqrt(rho_check);
}

PaseResult pase(const Graph& Z, double eps, int d, const EigenOptions& options) {
  const AdjustedMatrix Ac = privacy_adjust(Z, eps);
  PaseResult out;
  out.embedding = embed_operator(AdjustedGraphOperator(Ac), d, options);
  out.rho_check = estimate_sparsity(Ac);
  out.rescale_valid = out.rho_check > 0.0;
  return out;
}

}  // namespace privgraph
