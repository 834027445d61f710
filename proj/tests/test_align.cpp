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

#include <gtest/gtest.h>

#include <cmath>

#include "privgraph/align.hpp"
#include "privgraph/errors.hpp"
#include "test_support.hpp"

namespace privgraph {
namespace {

using testing::Gen;

Eigen::MatrixXd block_orthogonal(Gen& g, const Signature& sig) {
  return testing::indefinite_orthogonal(g, sig.p, sig.q, 0.0);
}

// Rows with x^T I x bounded away from zero in both blocks.
Eigen::MatrixXd well_conditioned(Gen& g, int n, const Signature& sig) {
  Eigen::MatrixXd x = g.gaussian(n, sig.dim());
  x.col(0).array() += 2.0;
  return x;
}

TEST(TwoToInfinity, Examples) {
  EXPECT_EQ(two_to_infinity(Eigen::MatrixXd::Zero(4, 3)), 0.0);
  EXPECT_EQ(two_to_infinity(Eigen::MatrixXd::Identity(5, 5)), 1.0);
  Eigen::MatrixXd m(2, 2);
  m << 3, 4, 1, 0;
  EXPECT_EQ(two_to_infinity(m), 5.0);
}

TEST(TwoToInfinity, IsANorm) {
  Gen g(3);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = g.integer(1, 20), d = g.integer(1, 5);
    const Eigen::MatrixXd a = g.gaussian(n, d), b = g.gaussian(n, d);
    const double s = g.uniform(-3.0, 3.0);
    EXPECT_LE(two_to_infinity(a + b), two_to_infinity(a) + two_to_infinity(b) + 1e-12);
    EXPECT_NEAR(two_to_infinity(s * a), std::abs(s) * two_to_infinity(a), 1e-12);
  }
}

TEST(CanonicalForm, TwoByTwoIndefinite) {
  const double a = 0.7, b = 1.9;
  Eigen::MatrixXd x(2, 2);
  x << a, 0, 0, b;
  const CanonicalForm c = canonical_form(x, Signature(1, 1));
  EXPECT_EQ(c.sig, Signature(1, 1));
  EXPECT_NEAR(c.eigvals[0], a * a, 1e-14);
  EXPECT_NEAR(c.eigvals[1], -b * b, 1e-14);
  EXPECT_LT((c.Xtilde - x).norm(), 1e-14);
}

TEST(CanonicalForm, FixedPoint) {
  Gen g(5);
  const Signature sig(2, 1);
  const CanonicalForm once = canonical_form(well_conditioned(g, 40, sig), sig);
  const CanonicalForm twice = canonical_form(once.Xtilde, once.sig);
  EXPECT_LT((once.Xtilde - twice.Xtilde).norm(), 1e-10 * once.Xtilde.norm());
}

TEST(CanonicalForm, RoutesAgree) {
  Gen g(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Signature sig(g.integer(1, 3), g.integer(0, 2));
    const Eigen::MatrixXd x = well_conditioned(g, g.integer(10, 80), sig);
    const CanonicalForm qr = canonical_form(x, sig);
    const CanonicalForm second = canonical_form_qx(x, sig);
    EXPECT_EQ(qr.sig, second.sig);
    EXPECT_LT((qr.eigvals - second.eigvals).norm(), 1e-8 * qr.eigvals.norm());
    EXPECT_LT((qr.Xtilde - second.Xtilde).norm(), 1e-6 * qr.Xtilde.norm());
  }
}

TEST(CanonicalForm, RankDeficientRefused) {
  Eigen::MatrixXd x(5, 2);
  x.col(0).setLinSpaced(5, 1.0, 2.0);
  x.col(1) = 2.0 * x.col(0);
  EXPECT_THROW(canonical_form(x, Signature(2, 0)), DegenerateInputError);
  EXPECT_THROW(canonical_form_qx(x, Signature(2, 0)), DegenerateInputError);
  EXPECT_THROW(canonical_form(Eigen::MatrixXd::Ones(1, 2), Signature(2, 0)), DegenerateInputError);
  EXPECT_THROW(canonical_form(Eigen::MatrixXd::Ones(4, 3), Signature(2, 0)), ParameterError);
}

TEST(BlockProcrustes, IdentityOnEqualInputs) {
  Gen g(1);
  const Eigen::MatrixXd a = g.gaussian(30, 3);
  EXPECT_LT((block_procrustes(a, a, Signature(2, 1)) - Eigen::MatrixXd::Identity(3, 3)).norm(), 1e-12);
}

TEST(BlockProcrustes, RecoversPlantedRotation) {
  Gen g(2);
  for (int trial = 0; trial < 100; ++trial) {
    const Signature sig(g.integer(1, 3), g.integer(0, 3));
    const Eigen::MatrixXd a = g.gaussian(g.integer(sig.dim(), 50), sig.dim());
    const Eigen::MatrixXd o0 = block_orthogonal(g, sig);
    const Eigen::MatrixXd b = a * o0;
    const Eigen::MatrixXd o = block_procrustes(a, b, sig);
    EXPECT_LE((a * o - b).norm(), 1e-8);
    EXPECT_LE((o.transpose() * o - Eigen::MatrixXd::Identity(sig.dim(), sig.dim())).norm(), 1e-12);
  }
}

// With q = 0 the answer is the orthogonal polar factor of A^T B.
TEST(BlockProcrustes, SingleBlockIsPolarFactor) {
  Gen g(4);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = g.integer(1, 4);
    const Eigen::MatrixXd a = g.gaussian(30, d), b = g.gaussian(30, d);
    const Eigen::MatrixXd c = a.transpose() * b;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.transpose() * c);
    const Eigen::MatrixXd polar = c * es.operatorInverseSqrt();
    EXPECT_LT((block_procrustes(a, b, Signature(d, 0)) - polar).norm(), 1e-8);
  }
}

TEST(BlockProcrustes, OffBlockEntriesStayZero) {
  Gen g(6);
  const Eigen::MatrixXd o = block_procrustes(g.gaussian(20, 4), g.gaussian(20, 4), Signature(2, 2));
  EXPECT_EQ(o.topRightCorner(2, 2).norm(), 0.0);
  EXPECT_EQ(o.bottomLeftCorner(2, 2).norm(), 0.0);
}

TEST(DTwoInfinity, ZeroOnSelf) {
  Gen g(8);
  const Signature sig(2, 1);
  const Eigen::MatrixXd x = well_conditioned(g, 30, sig);
  EXPECT_LT(d_two_infinity(x, x, sig), 1e-12);
}

TEST(DTwoInfinity, InvariantUnderIndefiniteOrthogonalGroup) {
  Gen g(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Signature sig(g.integer(1, 2), g.integer(1, 2));
    const Eigen::MatrixXd x = well_conditioned(g, 40, sig);
    const Eigen::MatrixXd q = testing::indefinite_orthogonal(g, sig.p, sig.q, 1.0);
    EXPECT_LE(d_two_infinity(x, x * q, sig), 1e-8) << "trial " << trial;
  }
}

// One row moved by delta. In the Euclidean case the canonical maps are
// orthogonal, so the optimal residual is at most delta in Frobenius norm.
TEST(DTwoInfinity, SingleRowPerturbation) {
  Gen g(10);
  for (int trial = 0; trial < 30; ++trial) {
    const Signature sig(2, 0);
    const Eigen::MatrixXd x = well_conditioned(g, 50, sig);
    const double delta = g.uniform(1e-4, 1e-1);
    Eigen::MatrixXd y = x;
    Eigen::Vector2d dir = g.gaussian(2, 1).col(0).normalized();
    y.row(g.integer(0, 49)) += delta * dir.transpose();
    const double d = d_two_infinity(x, y, sig);
    EXPECT_LE(d, delta * (1 + 1e-9));
    EXPECT_GE(d, delta / 4);
  }
}

TEST(DTwoInfinity, Diagnostics) {
  Gen g(11);
  const Signature sig(1, 1);
  const Eigen::MatrixXd x = well_conditioned(g, 30, sig);
  const AlignmentDiagnostics diag = d_two_infinity_diagnostics(x, sig, x, Signature(2, 0));
  EXPECT_TRUE(diag.signature_mismatch);
  EXPECT_LT(diag.orthogonality_error, 1e-12);
  const AlignmentDiagnostics same = d_two_infinity_diagnostics(x, sig, x, sig);
  EXPECT_FALSE(same.signature_mismatch);
  EXPECT_LT(same.frobenius_residual, 1e-12);
  EXPECT_THROW(d_two_infinity(x, x.topRows(10), sig), ParameterError);
}

TEST(Hausdorff, Examples) {
  Eigen::MatrixXd a(1, 1), b(1, 1);
  a << 0.0;
  b << 3.0;
  EXPECT_EQ(hausdorff(a, b), 3.0);
  Eigen::MatrixXd two(2, 1), mid(1, 1);
  two << 0.0, 1.0;
  mid << 0.5;
  EXPECT_EQ(hausdorff(two, mid), 0.5);
  Gen g(12);
  const Eigen::MatrixXd x = g.points(20, 3);
  EXPECT_EQ(hausdorff(x, x), 0.0);
}

TEST(Hausdorff, SymmetricAndTriangle) {
  Gen g(13);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd a = g.points(g.integer(1, 15), 2), b = g.points(g.integer(1, 15), 2),
                          c = g.points(g.integer(1, 15), 2);
    EXPECT_EQ(hausdorff(a, b), hausdorff(b, a));
    EXPECT_LE(hausdorff(a, c), hausdorff(a, b) + hausdorff(b, c) + 1e-12);
  }
}

}  // namespace
}  // namespace privgraph
