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

#include "privgraph/privacy.hpp"

#include <cmath>

#include "privgraph/errors.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

namespace {

void validate_eps(double eps) {
  if (std::isnan(eps) || eps < 0.0) throw ParameterError("epsilon must be >= 0");
}

// Inverse of pi(eps) on (0, 1/2].
double eps_from_pi(double pi) {
  if (pi <= 0.0) return kNoPrivacy;
  return std::log(1.0 / pi - 1.0);
}

}  // namespace

PrivacyParams privacy_params(double eps) {
  validate_eps(eps);
  PrivacyParams p;
  p.eps = eps;
  if (std::isinf(eps)) return p;  // pi = 0, sigma = 1, tau = 0 exactly.
  p.pi = 1.0 / (std::exp(eps) + 1.0);
  // tanh(eps / 2) equals 1 - 2 pi but keeps full precision near eps = 0.
  p.sigma2 = std::tanh(0.5 * eps);
  p.tau2 = p.pi;
  p.sigma = std::sqrt(p.sigma2);
  p.tau = std::sqrt(p.tau2);
  return p;
}

Graph edge_flip(const Graph& A, double eps, std::uint64_t seed) {
  const PrivacyParams params = privacy_params(eps);
  Graph out = A;
  if (std::isinf(eps)) return out;
  Rng rng(seed);
  for (std::uint8_t& bit : out.upper()) {
    if (uniform01(rng) < params.pi) bit ^= 1;
  }
  return out;
}

ComposedPrivacy compose_privacy(double eps1, double eps2) {
  const double pi1 = privacy_params(eps1).pi;
  const double pi2 = privacy_params(eps2).pi;
  ComposedPrivacy c;
  c.pi_prime = pi1 + pi2 - 2.0 * pi1 * pi2;
  c.eps_prime = eps_from_pi(c.pi_prime);
  return c;
}

LatentPositions lift_latents(const LatentPositions& X, double eps, double rho) {
  if (!(rho > 0.0)) throw ParameterError("lift_latents: rho must be positive");
  const PrivacyParams params = privacy_params(eps);
  LatentPositions out;
  out.sig = Signature(X.sig.p + 1, X.sig.q);
  out.X.resize(X.n(), X.dim() + 1);
  out.X.col(0).setConstant(params.tau);
  out.X.rightCols(X.dim()) = (params.sigma * std::sqrt(rho)) * X.X;
  out.scale_mu = params.tau2 + params.sigma2 * rho * X.scale_mu;
  out.labels = X.labels;
  return out;
}

DoubleLiftReduction reduce_double_lift(double eps1, double eps2) {
  const PrivacyParams first = privacy_params(eps1);
  const PrivacyParams second = privacy_params(eps2);
  DoubleLiftReduction r;
  const double u = second.tau;
  const double v = second.sigma * first.tau;
  r.a = std::sqrt(second.tau2 + second.sigma2 * first.tau2);
  r.b = second.sigma * first.sigma;
  if (r.a > 0.0) {
    // Rotation taking (u, v) to (0, a).
    const double c = v / r.a;
    const double s = u / r.a;
    r.rotation << c, -s, s, c;
  }
  return r;
}

}  // namespace privgraph
