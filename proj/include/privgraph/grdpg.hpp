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

// Generalized random dot-product graphs: latent position models, edge
// probability matrices under the indefinite inner product, graph sampling.

#ifndef PRIVGRAPH_GRDPG_HPP_
#define PRIVGRAPH_GRDPG_HPP_

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace privgraph {

// Signature (p, q) of the indefinite identity I_{p,q} = diag(1_p, -1_q).
struct Signature {
  int p = 1;
  int q = 0;

  Signature() = default;
  Signature(int p_, int q_);

  int dim() const { return p + q; }
  // Diagonal of I_{p,q}.
  Eigen::VectorXd diagonal() const;
  bool operator==(const Signature&) const = default;
};

// x^T I_{p,q} y.
double indefinite_dot(const Eigen::Ref<const Eigen::VectorXd>& x,
                      const Eigen::Ref<const Eigen::VectorXd>& y,
                      const Signature& sig);

struct LatentPositions {
  Eigen::MatrixXd X;  // n x d, rows are latent vectors
  Signature sig;
  double scale_mu = 1.0;    // E[xi_1^T I_{p,q} xi_2] of the generating model
  std::vector<int> labels;  // mixture component per row; empty if none

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index dim() const { return X.cols(); }
};

struct ProbabilityMatrix {
  Eigen::MatrixXd P;
  double rho = 1.0;
};

// Simple undirected graph; the strict upper triangle is stored packed in
// row-major order, which is also the order in which samplers and the
// privacy mechanism consume random numbers.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n);

  std::size_t num_vertices() const { return n_; }
  std::size_t num_pairs() const { return upper_.size(); }
  std::size_t num_edges() const;

  bool has_edge(std::size_t i, std::size_t j) const;
  void set_edge(std::size_t i, std::size_t j, bool present);

  std::span<const std::uint8_t> upper() const { return upper_; }
  std::span<std::uint8_t> upper() { return upper_; }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  Eigen::MatrixXd to_dense() const;

  static std::size_t pair_index(std::size_t n, std::size_t i, std::size_t j) {
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
  }

  bool operator==(const Graph&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> upper_;
};

namespace latent {

struct Dirac {
  Eigen::VectorXd x;
};

// alpha = P(row drawn from x1).
struct TwoPoint {
  Eigen::VectorXd x1;
  Eigen::VectorXd x2;
  double alpha = 0.5;
};

// Uniform on the circle {c e_1 + r u : |u| = 1} in R^2.
struct ShiftedCircle {
  double center = 0.5;
  double radius = 0.3;
};

// Three-component shape (circle, Bernoulli lemniscate, filled cluster)
// drawn in the unit disk and mapped affinely into {c e_1 + r u : |u| <= 1}.
// Components are sampled in proportions 2:1:1, with counts stratified.
struct LemniscateMixture {
  double center = 0.5;
  double radius = 0.3;
  double lemniscate_half_width = 0.5;
  double lemniscate_offset = 0.35;
  double cluster_offset = -0.5;
  double cluster_radius = 0.12;
};

struct Custom {
  Eigen::MatrixXd points;  // k x d support
  std::vector<double> weights;
};

}  // namespace latent

struct LatentDistributionSpec {
  std::variant<latent::Dirac, latent::TwoPoint, latent::ShiftedCircle,
               latent::LemniscateMixture, latent::Custom>
      shape;
  Signature sig;
};

// Analytic range [lo, hi] of x^T I_{p,q} y over the support of the spec.
std::pair<double, double> inner_product_range(const LatentDistributionSpec& spec);

// Analytic E[xi_1^T I_{p,q} xi_2] for independent draws.
double analytic_scale_mu(const LatentDistributionSpec& spec);

// Throws AdmissibilityError if the support range leaves [0, 1].
void check_admissible(const LatentDistributionSpec& spec);

LatentPositions sample_latent(const LatentDistributionSpec& spec, std::size_t n,
                              std::uint64_t seed);

// Balanced-SBM latent pair with |x_i| = sqrt(1 + gamma) and angle
// arccos((1 - gamma) / (1 + gamma)), placed symmetrically about e_1.
std::pair<Eigen::Vector2d, Eigen::Vector2d> sbm_latent_pair(double gamma);

// rho * x_i^T I_{p,q} x_j for all i, j (diagonal included but never sampled).
ProbabilityMatrix probability_matrix(const LatentPositions& X, double rho);

// Same computation without OpenMP; kept as the reference for tests.
ProbabilityMatrix probability_matrix_serial(const LatentPositions& X, double rho);

Graph sample_graph(const ProbabilityMatrix& P, std::uint64_t seed);

// min and max of x_i^T I x_j over all pairs i < j (i == j excluded).
std::pair<double, double> pairwise_inner_product_range(const LatentPositions& X);

}  // namespace privgraph

#endif  // PRIVGRAPH_GRDPG_HPP_
