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

// OpenMP kernels against their serial twins. The serial spanning tree is
// Kruskal over all pairs, an independent reference rather than a copy of the
// parallel Prim loop, so that pair differs even on one thread.
#include <benchmark/benchmark.h>

#include <Eigen/Dense>

#include "privgraph/grdpg.hpp"
#include "privgraph/kernels.hpp"
#include "privgraph/rng.hpp"

namespace pg = privgraph;

namespace {

Eigen::MatrixXd random_points(int n, int d, std::uint64_t seed) {
  pg::Rng rng(seed);
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = pg::uniform01(rng);
  return x;
}

pg::LatentPositions circle_latents(int n) {
  const pg::LatentDistributionSpec spec{pg::latent::ShiftedCircle{0.5, 0.3}, pg::Signature(2, 0)};
  return pg::sample_latent(spec, static_cast<std::size_t>(n), 1);
}

void BM_ProbabilityMatrix(benchmark::State& state) {
  const pg::LatentPositions X = circle_latents(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pg::probability_matrix(X, 1.0));
}

void BM_ProbabilityMatrixSerial(benchmark::State& state) {
  const pg::LatentPositions X = circle_latents(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pg::probability_matrix_serial(X, 1.0));
}

void BM_SpanningTree(benchmark::State& state) {
  const Eigen::MatrixXd x = random_points(static_cast<int>(state.range(0)), 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pg::kernels::minimum_spanning_tree(x));
}

void BM_SpanningTreeSerial(benchmark::State& state) {
  const Eigen::MatrixXd x = random_points(static_cast<int>(state.range(0)), 2, 2);
  for (auto _ : state) benchmark::DoNotOptimize(pg::kernels::minimum_spanning_tree_serial(x));
}

void BM_Hausdorff(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd a = random_points(n, 2, 3), b = random_points(n, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(pg::kernels::directed_hausdorff(a, b));
}

void BM_HausdorffSerial(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Eigen::MatrixXd a = random_points(n, 2, 3), b = random_points(n, 2, 4);
  for (auto _ : state) benchmark::DoNotOptimize(pg::kernels::directed_hausdorff_serial(a, b));
}

pg::kernels::CsrAdjacency random_csr(int n) {
  const pg::LatentPositions X = circle_latents(n);
  return pg::kernels::build_csr(pg::sample_graph(pg::probability_matrix(X, 0.2), 5));
}

void BM_CsrMatvec(benchmark::State& state) {
  const auto A = random_csr(static_cast<int>(state.range(0)));
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(A.n);
  Eigen::VectorXd y;
  for (auto _ : state) {
    pg::kernels::csr_matvec(A, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_CsrMatvecSerial(benchmark::State& state) {
  const auto A = random_csr(static_cast<int>(state.range(0)));
  const Eigen::VectorXd x = Eigen::VectorXd::Ones(A.n);
  Eigen::VectorXd y;
  for (auto _ : state) {
    pg::kernels::csr_matvec_serial(A, x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

void BM_AssignNearest(benchmark::State& state) {
  const Eigen::MatrixXd x = random_points(static_cast<int>(state.range(0)), 2, 6);
  const Eigen::MatrixXd c = random_points(3, 2, 7);
  std::vector<int> labels;
  for (auto _ : state) benchmark::DoNotOptimize(pg::kernels::assign_nearest(x, c, labels));
}

void BM_AssignNearestSerial(benchmark::State& state) {
  const Eigen::MatrixXd x = random_points(static_cast<int>(state.range(0)), 2, 6);
  const Eigen::MatrixXd c = random_points(3, 2, 7);
  std::vector<int> labels;
  for (auto _ : state) benchmark::DoNotOptimize(pg::kernels::assign_nearest_serial(x, c, labels));
}

}  // namespace

BENCHMARK(BM_ProbabilityMatrix)->Arg(500)->Arg(2000);
BENCHMARK(BM_ProbabilityMatrixSerial)->Arg(500)->Arg(2000);
BENCHMARK(BM_SpanningTree)->Arg(500)->Arg(2000);
BENCHMARK(BM_SpanningTreeSerial)->Arg(500)->Arg(2000);
BENCHMARK(BM_Hausdorff)->Arg(500)->Arg(2000);
BENCHMARK(BM_HausdorffSerial)->Arg(500)->Arg(2000);
BENCHMARK(BM_CsrMatvec)->Arg(1000)->Arg(4000);
BENCHMARK(BM_CsrMatvecSerial)->Arg(1000)->Arg(4000);
BENCHMARK(BM_AssignNearest)->Arg(10000)->Arg(100000);
BENCHMARK(BM_AssignNearestSerial)->Arg(10000)->Arg(100000);

BENCHMARK_MAIN();
