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

// Vietoris-Rips persistence in dimensions 0 and 1, bottleneck distance, and
// persistence-based clustering.

#ifndef PRIVGRAPH_TDA_HPP_
#define PRIVGRAPH_TDA_HPP_

#include <Eigen/Dense>

#include <optional>
#include <utility>
#include <vector>

namespace privgraph {

// kDistance enters edge {i, j} at |x_i - x_j|; kRadius at |x_i - x_j| / 2,
// the radius at which the balls around x_i and x_j meet.
enum class FiltrationScale { kDistance, kRadius };

struct PersistenceFeature {
  int dim = 0;
  double birth = 0.0;
  double death = 0.0;  // +inf for features alive at max_radius
  // Vertices of the simplex that created / killed the feature; death_simplex
  // is empty for infinite features.
  std::vector<int> birth_simplex;
  std::vector<int> death_simplex;

  bool infinite() const;
  double persistence() const { return death - birth; }
};

struct PersistenceDiagram {
  std::vector<PersistenceFeature> features;

  std::vector<PersistenceFeature> in_dim(int dim) const;
  // (birth, death) pairs of one dimension.
  std::vector<std::pair<double, double>> points(int dim) const;
};

struct RipsOptions {
  int max_dim = 1;
  // Filtration cutoff in output units. Unset: the enclosing radius when
  // max_dim = 1 (past it the complex is a cone), unbounded for max_dim = 0.
  std::optional<double> max_radius;
  FiltrationScale scale = FiltrationScale::kDistance;
};

PersistenceDiagram rips_persistence(const Eigen::MatrixXd& points, const RipsOptions& options = {});

// min_i max_j |x_i - x_j|.
double enclosing_radius(const Eigen::MatrixXd& points);

struct BottleneckResult {
  double distance = 0.0;
  // Set when the diagrams hold different numbers of infinite features.
  bool infinite_mismatch = false;
};

using DiagramPoints = std::vector<std::pair<double, double>>;

BottleneckResult bottleneck(const DiagramPoints& a, const DiagramPoints& b);
BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim);

// Local outlier factors of scalar values with exactly k neighbors each
// (nearest by |v_i - v_j|; ties go to the lower sorted position).
std::vector<double> local_outlier_factors(const std::vector<double>& values, int k);

struct OutlierFilterOptions {
  double q = 10.0;
  int max_neighbors = 5;  // k = min(max_neighbors, count - 1)
};

// Indices into `features` of the infinite features plus the finite ones
// whose persistence LOF exceeds median + q * mad.
std::vector<std::size_t> persistence_outlier_filter(const std::vector<PersistenceFeature>& features,
                                                    const OutlierFilterOptions& options);

// Single-linkage clustering with one cluster per selected H0 feature.
// Labels are 0..k-1, numbered by first appearance.
std::vector<int> topo_cluster(const Eigen::MatrixXd& points, const OutlierFilterOptions& options);
std::vector<int> topo_cluster(const Eigen::MatrixXd& points, double q);

}  // namespace privgraph

#endif  // PRIVGRAPH_TDA_HPP_
