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

// Clustering baselines and partition agreement.

#ifndef PRIVGRAPH_CLUSTERING_HPP_
#define PRIVGRAPH_CLUSTERING_HPP_

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace privgraph {

struct KMeansOptions {
  int restarts = 20;
  int max_iterations = 300;
};

struct KMeansResult {
  std::vector<int> labels;  // 0..k-1, numbered by first appearance
  Eigen::MatrixXd centers;  // row c is the center of label c
  double wcss = 0.0;
};

// Lloyd iterations from k-means++ seeding; best of `restarts` runs by
// within-cluster sum of squares. An emptied cluster is re-seeded at the
// point farthest from its center.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed,
                    const KMeansOptions& options = {});

double adjusted_rand_index(const std::vector<int>& a, const std::vector<int>& b);

}  // namespace privgraph

#endif  // PRIVGRAPH_CLUSTERING_HPP_
