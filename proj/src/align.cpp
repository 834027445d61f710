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

#include "privgraph/align.hpp"

#include <algorithm>
#include <cmath>

#include "privgraph/eigensolver.hpp"
#include "privgraph/errors.hpp"
#include "privgraph/kernels.hpp"
#include "privgraph/spectral.hpp"

namespace privgraph {

namespace {

void validate_shape(const Eigen::MatrixXd& X, const Signature& sig) {
  if (X.cols() != sig.dim()) throw ParameterError("matrix width does not match signature");
  if (X.rows() < X.cols()) throw DegenerateInputError("canonical form needs n >= d");
}

void check_rank(const Eigen::VectorXd& values, double rel) {
  const double top = values.cwiseAbs().maxCoeff();
  const double bottom = values.cwiseAbs().minCoeff();
  if (!(top > 0.0) || bottom < rel * top) {
    throw DegenerateInputError("X I X^T is rank deficient");
  }
}

CanonicalForm assemble(Eigen::VectorXd values, Eigen::MatrixXd U) {
  canonicalize_eigenpairs(values, U);
  CanonicalForm out;
  const Eigen::Index d = values.size();
  out.Xtilde.resize(U.rows(), d);
  int p = 0;
  for (Eigen::Index c = 0; c < d; ++c) {
    out.Xtilde.col(c) = U.col(c) * std::sqrt(std::abs(values[c]));
    if (values[c] >= 0.0) ++p;
  }
  out.sig = Signature(p, static_cast<int>(d) - p);
  out.eigvals = std::move(values);
  return out;
}

}  // namespace

double two_to_infinity(const Eigen::MatrixXd& M) {
  if (M.size() == 0) return 0.0;
  return M.rowwise().norm().maxCoeff();
}

CanonicalForm canonical_form(const Eigen::MatrixXd& X, const Signature& sig) {
  validate_shape(X, sig);
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(X);
  const Eigen::MatrixXd Q = qr.householderQ() * Eigen::MatrixXd::Identity(n, d);
  const Eigen::MatrixXd R = qr.matrixQR().topRows(d).triangularView<Eigen::Upper>();
  const Eigen::MatrixXd C = R * sig.diagonal().asDiagonal() * R.transpose();
  const EigenPairs pairs = dense_top_eigenpairs(0.5 * (C + C.transpose()), static_cast<int>(d));
  check_rank(pairs.values, 1e-10);
  return assemble(pairs.values, Q * pairs.vectors);
}

CanonicalForm canonical_form_qx(const Eigen::MatrixXd& X, const Signature& sig) {
  validate_shape(X, sig);
  const double n = static_cast<double>(X.rows());
  const Eigen::MatrixXd D = X.transpose() * X / n;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(D);
  if (es.eigenvalues().minCoeff() <= 1e-20 * std::max(es.eigenvalues().maxCoeff(), 1e-300)) {
    throw DegenerateInputError("X is not of full column rank");
  }
  const Eigen::MatrixXd half = es.operatorSqrt();
  const Eigen::MatrixXd inv_half = es.operatorInverseSqrt();
  const Eigen::MatrixXd M = half * sig.diagonal().asDiagonal() * half;
  const EigenPairs pairs = dense_top_eigenpairs(0.5 * (M + M.transpose()), static_cast<int>(X.cols()));
  check_rank(pairs.values, 1e-10);
  return assemble(n * pairs.values, X * inv_half * pairs.vectors / std::sqrt(n));
}

Eigen::MatrixXd block_procrustes(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B, const Signature& sig) {
  if (A.rows() != B.rows() || A.cols() != B.cols()) throw ParameterError("block_procrustes: shape mismatch");
  if (A.cols() != sig.dim()) throw ParameterError("block_procrustes: width does not match signature");
  Eigen::MatrixXd O = Eigen::MatrixXd::Identity(sig.dim(), sig.dim());
  const auto solve_block = [&](int start, int width) {
    if (width == 0) return;
    const Eigen::MatrixXd C = A.middleCols(start, width).transpose() * B.middleCols(start, width);
    if (C.norm() == 0.0) return;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(C, Eigen::ComputeFullU | Eigen::ComputeFullV);
    O.block(start, start, width, width) = svd.matrixU() * svd.matrixV().transpose();
  };
  solve_block(0, sig.p);
  solve_block(sig.p, sig.q);
  return O;
}

AlignmentDiagnostics d_two_infinity_diagnostics(const Eigen::MatrixXd& X, const Signature& sig_x,
                                                const Eigen::MatrixXd& Y, const Signature& sig_y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) throw ParameterError("d_two_infinity: shape mismatch");
  const CanonicalForm cx = canonical_form(X, sig_x);
  const CanonicalForm cy = canonical_form(Y, sig_y);
  for (const CanonicalForm* c : {&cx, &cy}) {
    const Eigen::VectorXd mags = c->eigvals.cwiseAbs();
    if (mags.minCoeff() < 1e-8 * mags.maxCoeff()) {
      throw DegenerateInputError("d_two_infinity: ill-conditioned configuration");
    }
  }
  AlignmentDiagnostics out;
  out.signature_mismatch = !(cx.sig == cy.sig);
  out.rotation = block_procrustes(cx.Xtilde, cy.Xtilde, cx.sig);
  const Eigen::MatrixXd residual = cy.Xtilde - cx.Xtilde * out.rotation;
  out.d2inf = two_to_infinity(residual);
  out.frobenius_residual = residual.norm();
  out.orthogonality_error =
      (out.rotation.transpose() * out.rotation - Eigen::MatrixXd::Identity(X.cols(), X.cols())).norm();
  return out;
}

double d_two_infinity(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Signature& sig) {
  return d_two_infinity_diagnostics(X, sig, Y, sig).d2inf;
}

double hausdorff(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) {
  if (X.rows() == 0 || Y.rows() == 0) throw ParameterError("hausdorff: empty point set");
  if (X.cols() != Y.cols()) throw ParameterError("hausdorff: dimension mismatch");
  return std::max(kernels::directed_hausdorff(X, Y), kernels::directed_hausdorff(Y, X));
}

}  // namespace privgraph
