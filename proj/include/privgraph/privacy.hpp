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

// Edge-level randomized response ("edge flip") and the geometry it induces
// on latent positions.

#ifndef PRIVGRAPH_PRIVACY_HPP_
#define PRIVGRAPH_PRIVACY_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <limits>

#include "privgraph/grdpg.hpp"

namespace privgraph {

// Privacy budget sentinel for "no privacy". Handled symbolically everywhere.
inline constexpr double kNoPrivacy = std::numeric_limits<double>::infinity();

// Flip probability pi = 1 / (e^eps + 1), sigma = sqrt(1 - 2 pi),
// tau = sqrt(pi).
struct PrivacyParams {
  double eps = kNoPrivacy;
  double pi = 0.0;
  double sigma = 1.0;
  double tau = 0.0;
  double sigma2 = 1.0;
  double tau2 = 0.0;
};

PrivacyParams privacy_params(double eps);

// Flips every unordered pair {i, j} once with probability pi(eps), consuming
// the stream in row-major upper-triangle order. eps = infinity returns the
// input untouched without drawing.
Graph edge_flip(const Graph& A, double eps, std::uint64_t seed);

struct ComposedPrivacy {
  double eps_prime = kNoPrivacy;
  double pi_prime = 0.0;
};

// Budget of a single flip equivalent to flipping with eps1 then eps2.
ComposedPrivacy compose_privacy(double eps1, double eps2);

// x -> (tau, sigma sqrt(rho) x): latent positions of the flipped graph,
// signature (p + 1, q).
LatentPositions lift_latents(const LatentPositions& X, double eps, double rho);

// Two successive lifts give (tau2, sigma2 tau1, sigma2 sigma1 x). A rotation
// of the first two coordinates (an element of O(p+2, q)) maps this to
// (0, a, b x); `rotation` is that 2 x 2 block.
struct DoubleLiftReduction {
  double a = 0.0;
  double b = 1.0;
  Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();
};

DoubleLiftReduction reduce_double_lift(double eps1, double eps2);

}  // namespace privgraph

#endif  // PRIVGRAPH_PRIVACY_HPP_
