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

// Partial symmetric eigendecomposition: the k eigenpairs of largest
// magnitude, from a dense solver for small problems or a Lanczos iteration
// with full reorthogonalization on a matrix-free operator.

#ifndef PRIVGRAPH_EIGENSOLVER_HPP_
#define PRIVGRAPH_EIGENSOLVER_HPP_

#include <Eigen/Dense>

#include <cstdint>

namespace privgraph {

class SymmetricOperator {
 public:
  virtual ~SymmetricOperator() = default;
  virtual Eigen::Index size() const = 0;
  // y = M x
  virtual void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const = 0;
  virtual Eigen::MatrixXd to_dense() const = 0;
};

class DenseSymmetricOperator final : public SymmetricOperator {
 public:
  explicit DenseSymmetricOperator(const Eigen::MatrixXd& m) : m_(m) {}
  Eigen::Index size() const override { return m_.rows(); }
  void apply(const Eigen::VectorXd& x, Eigen::VectorXd& y) const override { y.noalias() = m_ * x; }
  Eigen::MatrixXd to_dense() const override { return m_; }

 private:
  const Eigen::MatrixXd& m_;
};

struct EigenOptions {
  // Problems up to this size are materialized and solved densely.
  Eigen::Index dense_threshold = 512;
  // Relative residual tolerance |M y - theta y| / |theta_1| for Lanczos.
  double tolerance = 1e-10;
  std::uint64_t seed = 0x5EEDULL;
};

struct EigenPairs {
  // Sorted by |value| descending; ties favor positive values, then the
  // solver's ascending-value index.
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;  // orthonormal columns
  // |lambda_{k+1}|, or NaN when k == n.
  double next_magnitude = 0.0;
  bool used_lanczos = false;
  int krylov_dimension = 0;
};

EigenPairs top_eigenpairs_by_magnitude(const SymmetricOperator& op, int k,
                                       const EigenOptions& options = {});

EigenPairs dense_top_eigenpairs(const Eigen::MatrixXd& m, int k);

EigenPairs lanczos_top_eigenpairs(const SymmetricOperator& op, int k,
                                  const EigenOptions& options = {});

}  // namespace privgraph

#endif  // PRIVGRAPH_EIGENSOLVER_HPP_
