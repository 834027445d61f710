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

#include "privgraph/grdpg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>

#include "privgraph/errors.hpp"
#include "privgraph/rng.hpp"

namespace privgraph {

namespace {

constexpr double kEntryTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::string format_range(double lo, double hi) {
  std::ostringstream os;
  os.precision(9);
  os << "[" << lo << ", " << hi << "]";
  return os.str();
}

void require_planar(const Signature& sig, const char* what) {
  if (sig.p != 2 || sig.q != 0) {
    throw ParameterError(std::string(what) + " is defined in R^2 with signature (2,0)");
  }
}

void validate_disk(double c, double r, const char* what) {
  if (!(c > 0.0) || !(r > 0.0)) {
    throw ParameterError(std::string(what) + ": center norm and radius must be positive");
  }
}

// Inner product range of two points of the disk {c e_1 + r u : |u| <= 1}.
// The bilinear form is extremal on the boundary circle; the minimum sits at
// |cos t| = c / (2r) when that is feasible.
std::pair<double, double> disk_range(double c, double r) {
  const double hi = (c + r) * (c + r);
  const double lo = (c >= 2.0 * r) ? (c - r) * (c - r) : 0.5 * c * c - r * r;
  return {lo, hi};
}

std::pair<double, double> support_range(const Eigen::MatrixXd& pts,
                                        const std::vector<double>& w,
                                        const Signature& sig) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (Eigen::Index a = 0; a < pts.rows(); ++a) {
    if (w[a] <= 0.0) continue;
    for (Eigen::Index b = a; b < pts.rows(); ++b) {
      if (w[b] <= 0.0) continue;
      const double v = indefinite_dot(pts.row(a).transpose(), pts.row(b).transpose(), sig);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

void lemniscate_geometry_check(const latent::LemniscateMixture& m) {
  validate_disk(m.center, m.radius, "lemniscate_mixture");
  const double lem_extent = std::hypot(m.lemniscate_half_width, std::abs(m.lemniscate_offset) +
                                                                    0.36 * m.lemniscate_half_width);
  const double cluster_extent = std::abs(m.cluster_offset) + m.cluster_radius;
  if (lem_extent > 1.0 || cluster_extent > 1.0 || m.cluster_radius <= 0.0 ||
      m.lemniscate_half_width <= 0.0) {
    throw ParameterError("lemniscate_mixture: components must lie inside the unit disk");
  }
}

Eigen::MatrixXd two_rows(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  Eigen::MatrixXd m(2, a.size());
  m.row(0) = a.transpose();
  m.row(1) = b.transpose();
  return m;
}

void fill_probability_row(const Eigen::MatrixXd& XI, const Eigen::MatrixXd& X, double rho,
                          Eigen::Index i, Eigen::MatrixXd& P) {
  const Eigen::Index n = X.rows();
  const Eigen::Index d = X.cols();
  for (Eigen::Index j = 0; j < n; ++j) {
    double acc = 0.0;
    for (Eigen::Index k = 0; k < d; ++k) acc += XI(i, k) * X(j, k);
    P(i, j) = rho * acc;
  }
}

void validate_probability_matrix(Eigen::MatrixXd& P) {
  const Eigen::Index n = P.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      double& v = P(i, j);
      if (!(v >= -kEntryTolerance && v <= 1.0 + kEntryTolerance)) {
        std::ostringstream os;
        os.precision(9);
        os << "edge probability P(" << i << "," << j << ") = " << v << " outside [0, 1]";
        throw AdmissibilityError(os.str());
      }
      v = std::clamp(v, 0.0, 1.0);
    }
  }
}

void validate_rho(double rho) {
  if (!(rho > 0.0 && rho <= 1.0)) throw ParameterError("rho must lie in (0, 1]");
}

}  // namespace

Signature::Signature(int p_, int q_) : p(p_), q(q_) {
  if (p < 0 || q < 0 || p + q < 1) throw ParameterError("signature requires p, q >= 0 and p + q >= 1");
}

Eigen::VectorXd Signature::diagonal() const {
  Eigen::VectorXd s(dim());
  s.head(p).setOnes();
  s.tail(q).setConstant(-1.0);
  return s;
}

double indefinite_dot(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y, const Signature& sig) {
  double acc = 0.0;
  for (int k = 0; k < sig.p; ++k) acc += x[k] * y[k];
  for (int k = sig.p; k < sig.dim(); ++k) acc -= x[k] * y[k];
  return acc;
}

Graph::Graph(std::size_t n) : n_(n), upper_(n > 1 ? n * (n - 1) / 2 : 0, 0) {}

std::size_t Graph::num_edges() const {
  return static_cast<std::size_t>(std::count(upper_.begin(), upper_.end(), std::uint8_t{1}));
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return upper_[pair_index(n_, i, j)] != 0;
}

void Graph::set_edge(std::size_t i, std::size_t j, bool present) {
  if (i == j || i >= n_ || j >= n_) throw ParameterError("invalid vertex pair");
  if (i > j) std::swap(i, j);
  upper_[pair_index(n_, i, j)] = present ? 1 : 0;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j, ++k) {
      if (upper_[k]) out.emplace_back(i, j);
    }
  }
  return out;
}

Eigen::MatrixXd Graph::to_dense() const {
  const auto n = static_cast<Eigen::Index>(n_);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++k) {
      if (upper_[k]) A(i, j) = A(j, i) = 1.0;
    }
  }
  return A;
}

std::pair<double, double> inner_product_range(const LatentDistributionSpec& spec) {
  const Signature& sig = spec.sig;
  return std::visit(
      Overloaded{
          [&](const latent::Dirac& s) {
            if (s.x.size() != sig.dim()) throw ParameterError("dirac: dimension mismatch");
            const double v = indefinite_dot(s.x, s.x, sig);
            return std::pair{v, v};
          },
          [&](const latent::TwoPoint& s) {
            if (s.x1.size() != sig.dim() || s.x2.size() != sig.dim()) {
              throw ParameterError("two_point: dimension mismatch");
            }
            if (!(s.alpha >= 0.0 && s.alpha <= 1.0)) throw ParameterError("two_point: alpha outside [0, 1]");
            return support_range(two_rows(s.x1, s.x2), {s.alpha, 1.0 - s.alpha}, sig);
          },
          [&](const latent::ShiftedCircle& s) {
            require_planar(sig, "shifted_circle");
            validate_disk(s.center, s.radius, "shifted_circle");
            return disk_range(s.center, s.radius);
          },
          [&](const latent::LemniscateMixture& s) {
            require_planar(sig, "lemniscate_mixture");
            lemniscate_geometry_check(s);
            return disk_range(s.center, s.radius);
          },
          [&](const latent::Custom& s) {
            if (s.points.cols() != sig.dim()) throw ParameterError("custom: dimension mismatch");
            if (static_cast<std::size_t>(s.points.rows()) != s.weights.size() || s.weights.empty()) {
              throw ParameterError("custom: need one weight per support point");
            }
            double total = 0.0;
            for (double w : s.weights) {
              if (w < 0.0) throw ParameterError("custom: negative weight");
              total += w;
            }
            if (!(total > 0.0)) throw ParameterError("custom: weights sum to zero");
            return support_range(s.points, s.weights, sig);
          },
      },
      spec.shape);
}

double analytic_scale_mu(const LatentDistributionSpec& spec) {
  const Signature& sig = spec.sig;
  return std::visit(
      Overloaded{
          [&](const latent::Dirac& s) { return indefinite_dot(s.x, s.x, sig); },
          [&](const latent::TwoPoint& s) {
            const Eigen::VectorXd m = s.alpha * s.x1 + (1.0 - s.alpha) * s.x2;
            return indefinite_dot(m, m, sig);
          },
          [&](const latent::ShiftedCircle& s) { return s.center * s.center; },
          [&](const latent::LemniscateMixture& s) {
            // Component means: circle at 0, lemniscate and cluster at their
            // offsets, mixed 2:1:1.
            Eigen::Vector2d m(s.center, s.radius * 0.25 * (s.lemniscate_offset + s.cluster_offset));
            return m.squaredNorm();
          },
          [&](const latent::Custom& s) {
            Eigen::VectorXd m = Eigen::VectorXd::Zero(s.points.cols());
            double total = 0.0;
            for (std::size_t k = 0; k < s.weights.size(); ++k) {
              m += s.weights[k] * s.points.row(static_cast<Eigen::Index>(k)).transpose();
              total += s.weights[k];
            }
            m /= total;
            return indefinite_dot(m, m, sig);
          },
      },
      spec.shape);
}

void check_admissible(const LatentDistributionSpec& spec) {
  const auto [lo, hi] = inner_product_range(spec);
  // The SBM pair has squared norms 1 + gamma; its upper bound is carried by
  // rho and enforced on P instead.
  const bool scaled = std::holds_alternative<latent::TwoPoint>(spec.shape);
  if (lo < 0.0 || (hi > 1.0 && !scaled)) {
    throw AdmissibilityError("latent support inner products span " + format_range(lo, hi) +
                             ", outside [0, 1]");
  }
}

LatentPositions sample_latent(const LatentDistributionSpec& spec, std::size_t n,
                              std::uint64_t seed) {
  if (n < 1) throw ParameterError("sample_latent: n must be >= 1");
  check_admissible(spec);
  Rng rng(seed);
  const auto rows = static_cast<Eigen::Index>(n);
  LatentPositions out;
  out.sig = spec.sig;
  out.scale_mu = analytic_scale_mu(spec);
  out.X.resize(rows, spec.sig.dim());

  std::visit(
      Overloaded{
          [&](const latent::Dirac& s) { out.X.rowwise() = s.x.transpose(); },
          [&](const latent::TwoPoint& s) {
            out.labels.resize(n);
            for (Eigen::Index i = 0; i < rows; ++i) {
              const bool first = uniform01(rng) < s.alpha;
              out.X.row(i) = (first ? s.x1 : s.x2).transpose();
              out.labels[static_cast<std::size_t>(i)] = first ? 0 : 1;
            }
          },
          [&](const latent::ShiftedCircle& s) {
            for (Eigen::Index i = 0; i < rows; ++i) {
              const double t = 2.0 * std::numbers::pi * uniform01(rng);
              out.X(i, 0) = s.center + s.radius * std::cos(t);
              out.X(i, 1) = s.radius * std::sin(t);
            }
          },
          [&](const latent::LemniscateMixture& s) {
            const std::size_t n_circle = (n + 1) / 2;
            const std::size_t n_lem = (n - n_circle + 1) / 2;
            out.labels.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
              double zx = 0.0;
              double zy = 0.0;
              int label = 0;
              if (i < n_circle) {
                const double t = 2.0 * std::numbers::pi * uniform01(rng);
                zx = std::cos(t);
                zy = std::sin(t);
              } else if (i < n_circle + n_lem) {
                const double t = 2.0 * std::numbers::pi * uniform01(rng);
                const double den = 1.0 + std::sin(t) * std::sin(t);
                zx = s.lemniscate_half_width * std::cos(t) / den;
                zy = s.lemniscate_offset + s.lemniscate_half_width * std::sin(t) * std::cos(t) / den;
                label = 1;
              } else {
                const double t = 2.0 * std::numbers::pi * uniform01(rng);
                const double rad = s.cluster_radius * std::sqrt(uniform01(rng));
                zx = rad * std::cos(t);
                zy = s.cluster_offset + rad * std::sin(t);
                label = 2;
              }
              const auto row = static_cast<Eigen::Index>(i);
              out.X(row, 0) = s.center + s.radius * zx;
              out.X(row, 1) = s.radius * zy;
              out.labels[i] = label;
            }
          },
          [&](const latent::Custom& s) {
            std::vector<double> probs(s.weights);
            double total = 0.0;
            for (double w : probs) total += w;
            for (double& w : probs) w /= total;
            out.labels.resize(n);
            for (Eigen::Index i = 0; i < rows; ++i) {
              double u = uniform01(rng);
              int k = 0;
              while (k + 1 < static_cast<int>(probs.size()) && u >= probs[k]) {
                u -= probs[k];
                ++k;
              }
              out.X.row(i) = s.points.row(k);
              out.labels[static_cast<std::size_t>(i)] = k;
            }
          },
      },
      spec.shape);
  return out;
}

std::pair<Eigen::Vector2d, Eigen::Vector2d> sbm_latent_pair(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ParameterError("sbm_latent_pair: gamma must lie in (0, 1]");
  const double norm = std::sqrt(1.0 + gamma);
  const double theta = std::acos((1.0 - gamma) / (1.0 + gamma));
  const Eigen::Vector2d x1(norm * std::cos(theta / 2), norm * std::sin(theta / 2));
  const Eigen::Vector2d x2(norm * std::cos(theta / 2), -norm * std::sin(theta / 2));
  return {x1, x2};
}

ProbabilityMatrix probability_matrix(const LatentPositions& X, double rho) {
  validate_rho(rho);
  const Eigen::Index n = X.n();
  const Eigen::MatrixXd XI = X.X * X.sig.diagonal().asDiagonal();
  ProbabilityMatrix out{Eigen::MatrixXd(n, n), rho};
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < n; ++i) fill_probability_row(XI, X.X, rho, i, out.P);
  validate_probability_matrix(out.P);
  return out;
}

ProbabilityMatrix probability_matrix_serial(const LatentPositions& X, double rho) {
  validate_rho(rho);
  const Eigen::Index n = X.n();
  const Eigen::MatrixXd XI = X.X * X.sig.diagonal().asDiagonal();
  ProbabilityMatrix out{Eigen::MatrixXd(n, n), rho};
  for (Eigen::Index i = 0; i < n; ++i) fill_probability_row(XI, X.X, rho, i, out.P);
  validate_probability_matrix(out.P);
  return out;
}

Graph sample_graph(const ProbabilityMatrix& P, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(P.P.rows());
  Graph g(n);
  Rng rng(seed);
  auto upper = g.upper();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      upper[k] = bernoulli(rng, P.P(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) ? 1 : 0;
    }
  }
  return g;
}

std::pair<double, double> pairwise_inner_product_range(const LatentPositions& X) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const Eigen::MatrixXd XI = X.X * X.sig.diagonal().asDiagonal();
  for (Eigen::Index i = 0; i < X.n(); ++i) {
    for (Eigen::Index j = i + 1; j < X.n(); ++j) {
      const double v = XI.row(i).dot(X.X.row(j));
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  return {lo, hi};
}

}  // namespace privgraph
