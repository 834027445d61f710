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

// Identifiability-aware comparison of latent configurations: two-to-infinity
// norm, canonical forms, block Procrustes over O(d) ∩ O(p,q), the d_{2,inf}
// distance and Hausdorff distance.

#ifndef PRIVGRAPH_ALIGN_HPP_
#define PRIVGRAPH_ALIGN_HPP_

#include <Eigen/Dense>

#include "privgraph/grdpg.hpp"

namespace privgraph {

// Largest row norm.
double two_to_infinity(const Eigen::MatrixXd& M);

// U_P |Lambda_P|^{1/2} for P = X I_{p,q} X^T, in canonical column order.
struct CanonicalForm {
  Eigen::MatrixXd Xtilde;
  Signature sig;            // realized by the eigenvalue signs
  Eigen::VectorXd eigvals;  // nonzero eigenvalues of P, canonical order
};

// Thin-QR route: X = Q R, eigendecompose R I R^T.
CanonicalForm canonical_form(const Eigen::MatrixXd& X, const Signature& sig);
// Second moment route: X D^{-1/2} V |Lambda|^{1/2} with D = X^T X / n.
CanonicalForm canonical_form_qx(const Eigen::MatrixXd& X, const Signature& sig);

// Block-diagonal O = diag(O_p, O_q) minimizing |A O - B|_F, each block an
// orthogonal Procrustes solution.
Eigen::MatrixXd block_procrustes(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B,
                                 const Signature& sig);

struct AlignmentDiagnostics {
  double d2inf = 0.0;
  double frobenius_residual = 0.0;  // |Ytilde - Xtilde O|_F
  double orthogonality_error = 0.0;  // |O^T O - I|_F
  bool signature_mismatch = false;
  Eigen::MatrixXd rotation;
};

// |Ytilde - Xtilde O|_{2,inf} with O from block_procrustes.
double d_two_infinity(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, const Signature& sig);

// Each argument carries its own signature (an embedding may realize a
// different one than the model). Blocks follow sig_x.
AlignmentDiagnostics d_two_infinity_diagnostics(const Eigen::MatrixXd& X, const Signature& sig_x,
                                                const Eigen::MatrixXd& Y, const Signature& sig_y);

double hausdorff(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y);

}  // namespace privgraph

#endif  // PRIVGRAPH_ALIGN_HPP_
