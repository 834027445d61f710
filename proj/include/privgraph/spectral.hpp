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

// Adjacency spectral embedding and its privacy-adjusted variant.

#ifndef PRIVGRAPH_SPECTRAL_HPP_
#define PRIVGRAPH_SPECTRAL_HPP_

#include <Eigen/Dense>

#include <vector>

#include "privgraph/eigensolver.hpp"
#include "privgraph/grdpg.hpp"
#include "privgraph/kernels.hpp"
#include "privgraph/privacy.hpp"

namespace privgraph {

// ase(M; d) = U |Lambda|^{1/2}. Columns are ordered with positive
// eigenvalues first (descending), then negative ones by descending
// magnitude; each eigenvector is signed so its largest-magnitude entry is
// positive.
struct Embedding {
  Eigen::MatrixXd Xhat;
  Eigen::MatrixXd U;
  Eigen::VectorXd eigvals;
  std::vector<int> eig_signs;
  // |lambda_d| == |lambda_{d+1}|: the retained subspace is not unique.
  bool tie_warning = false;

  // Signature realized by the retained eigenvalues.
  Signature signature() const;
};

Embedding adjacency_spectral_embedding(const Eigen::MatrixXd& M, int d,
                                       const EigenOptions& options = {});
Embedding adjacency_spectral_embedding(const Graph& g, int d, const EigenOptions& options = {});
Embedding embed_operator(const SymmetricOperator& op, int d, const EigenOptions& options = {});

// Puts magnitude-sorted eigenpairs into canonical column order and sign.
void canonicalize_eigenpairs(Eigen::VectorXd& values, Eigen::MatrixXd& vectors);

// (Z - tau^2 J) / sigma^2 for a flipped graph Z, kept implicit.
struct AdjustedMatrix {
  Graph Z;
  PrivacyParams params;

  double entry(std::size_t i, std::size_t j) const;
  Eigen::MatrixXd dense() const;
};

// Matrix-free product (Z v - tau^2 (1^T v) 1) / sigma^2.
class AdjustedGraphOperator final : public SymmetricOperator {
 public:
  explicit AdjustedGraphOperator(const AdjustedMatrix& m);
  Eigen::Index size() const override { return csr_.n; }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override;
  Eigen::MatrixXd to_dense() const override { return m_.dense(); }

 private:
  const AdjustedMatrix& m_;
  kernels::CsrAdjacency csr_;
};

// Throws ParameterError at eps = 0, where no signal survives.
AdjustedMatrix privacy_adjust(const Graph& Z, double eps);

// Mean of the adjusted matrix over i < j.
double estimate_sparsity(const AdjustedMatrix& Ac);

struct PaseResult {
  Embedding embedding;
  double rho_check = 0.0;
  // False when rho_check <= 0; the rescaled estimate is then withheld.
  bool rescale_valid = false;

  // Xhat / sqrt(rho_check); throws NumericError if !rescale_valid.
  Eigen::MatrixXd rescaled() const;
};

PaseResult pase(const Graph& Z, double eps, int d, const EigenOptions& options = {});

}  // namespace privgraph

#endif  // PRIVGRAPH_SPECTRAL_HPP_
