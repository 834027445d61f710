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

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "privgraph/align.hpp"
#include "privgraph/errors.hpp"
#include "privgraph/tda.hpp"
#include "test_support.hpp"

namespace privgraph {
namespace {

using testing::Gen;
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<std::pair<double, double>> sorted_points(const PersistenceDiagram& d, int dim) {
  auto p = d.points(dim);
  std::sort(p.begin(), p.end());
  return p;
}

RipsOptions full_complex() {
  RipsOptions o;
  o.max_radius = 1e9;
  return o;
}

TEST(Rips, SinglePoint) {
  const PersistenceDiagram d = rips_persistence(Eigen::MatrixXd::Zero(1, 2));
  ASSERT_EQ(d.features.size(), 1u);
  EXPECT_EQ(d.features[0].dim, 0);
  EXPECT_EQ(d.features[0].birth, 0.0);
  EXPECT_TRUE(d.features[0].infinite());
}

TEST(Rips, CollinearPoints) {
  Eigen::MatrixXd x(3, 1);
  x << 0, 1, 3;
  const PersistenceDiagram d = rips_persistence(x);
  const std::vector<std::pair<double, double>> want{{0, 1}, {0, 2}, {0, kInf}};
  EXPECT_EQ(sorted_points(d, 0), want);
  EXPECT_TRUE(d.points(1).empty());
}

TEST(Rips, SquareHasOneLoop) {
  const double s = 0.75;
  Eigen::MatrixXd x(4, 2);
  x << 0, 0, s, 0, s, s, 0, s;
  RipsOptions o;
  o.max_radius = 2 * s;
  const auto h1 = rips_persistence(x, o).in_dim(1);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_EQ(h1[0].birth, s);
  EXPECT_NEAR(h1[0].death, s * std::sqrt(2.0), 1e-15);
  EXPECT_EQ(h1[0].death_simplex.size(), 3u);
  // The default cutoff (enclosing radius = diagonal) still closes the loop.
  EXPECT_EQ(rips_persistence(x).in_dim(1).size(), 1u);
}

TEST(Rips, H0MatchesThresholdScan) {
  Gen g(1);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = g.integer(1, 7);
    const Eigen::MatrixXd x = g.points(n, g.integer(1, 3));
    RipsOptions o;
    o.max_dim = 0;
    const PersistenceDiagram d = rips_persistence(x, o);
    std::vector<double> deaths;
    int infinite = 0;
    for (const auto& f : d.features) {
      EXPECT_EQ(f.birth, 0.0);
      if (f.infinite()) ++infinite;
      else deaths.push_back(f.death);
    }
    std::sort(deaths.begin(), deaths.end());
    EXPECT_EQ(infinite, 1);
    EXPECT_EQ(deaths, testing::h0_deaths_by_scan(x)) << "trial " << trial;
  }
}

TEST(Rips, H1MatchesBoundaryReduction) {
  Gen g(2);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = g.integer(3, trial < 100 ? 8 : 16);
    const Eigen::MatrixXd x = g.points(n, 2);
    const auto want = testing::h1_by_reduction(x);
    EXPECT_EQ(sorted_points(rips_persistence(x, full_complex()), 1), want) << "trial " << trial;
    // Past the enclosing radius the complex is a cone, so the cutoff
    // changes nothing.
    EXPECT_EQ(sorted_points(rips_persistence(x), 1), want) << "trial " << trial;
  }
}

TEST(Rips, CutoffLeavesLoopsOpen) {
  Eigen::MatrixXd x(4, 2);
  x << 0, 0, 1, 0, 1, 1, 0, 1;
  RipsOptions o;
  o.max_radius = 1.2;
  const auto h1 = rips_persistence(x, o).in_dim(1);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_TRUE(h1[0].infinite());
  o.max_dim = 0;
  o.max_radius = 0.5;
  EXPECT_EQ(rips_persistence(x, o).in_dim(0).size(), 4u);
}

TEST(Rips, IsometryInvariance) {
  Gen g(3);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::MatrixXd x = g.points(g.integer(3, 25), 3);
    const Eigen::MatrixXd y = x * g.orthogonal(3) + Eigen::MatrixXd::Constant(x.rows(), 3, 0.3);
    const PersistenceDiagram a = rips_persistence(x, full_complex());
    const PersistenceDiagram b = rips_persistence(y, full_complex());
    for (int dim : {0, 1}) {
      const auto pa = sorted_points(a, dim), pb = sorted_points(b, dim);
      ASSERT_EQ(pa.size(), pb.size());
      for (std::size_t i = 0; i < pa.size(); ++i) {
        EXPECT_NEAR(pa[i].first, pb[i].first, 1e-9);
        if (std::isfinite(pa[i].second)) {
          EXPECT_NEAR(pa[i].second, pb[i].second, 1e-9);
        }
      }
    }
  }
}

TEST(Rips, ScaleEquivariance) {
  Gen g(4);
  for (double c : {0.5, 2.0, 4.0}) {
    const Eigen::MatrixXd x = g.points(20, 2);
    auto a = sorted_points(rips_persistence(x, full_complex()), 1);
    for (auto& p : a) p = {c * p.first, c * p.second};
    RipsOptions o;
    o.max_radius = c * 1e9;
    EXPECT_EQ(sorted_points(rips_persistence(c * x, o), 1), a);
    auto h0 = sorted_points(rips_persistence(x), 0);
    for (auto& p : h0) p.second *= c;
    EXPECT_EQ(sorted_points(rips_persistence(c * x), 0), h0);
  }
  const Eigen::MatrixXd x = g.points(15, 2);
  const double c = 1.37;
  const auto a = sorted_points(rips_persistence(x, full_complex()), 1);
  const auto b = sorted_points(rips_persistence(c * x, full_complex()), 1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(c * a[i].second, b[i].second, 1e-12);
}

TEST(Rips, RadiusScaleHalvesValues) {
  Gen g(5);
  const Eigen::MatrixXd x = g.points(12, 2);
  RipsOptions o;
  o.scale = FiltrationScale::kRadius;
  auto half = sorted_points(rips_persistence(x, o), 1);
  auto full = sorted_points(rips_persistence(x), 1);
  ASSERT_EQ(half.size(), full.size());
  for (std::size_t i = 0; i < half.size(); ++i) {
    EXPECT_EQ(half[i].first, 0.5 * full[i].first);
    EXPECT_EQ(half[i].second, 0.5 * full[i].second);
  }
}

TEST(Rips, InvalidOptions) {
  RipsOptions o;
  o.max_dim = 2;
  EXPECT_THROW(rips_persistence(Eigen::MatrixXd::Zero(3, 2), o), ParameterError);
  EXPECT_THROW(rips_persistence(Eigen::MatrixXd::Zero(0, 2)), ParameterError);
}

TEST(Bottleneck, Examples) {
  const DiagramPoints d1{{0, 2}};
  EXPECT_EQ(bottleneck(d1, d1).distance, 0.0);
  EXPECT_EQ(bottleneck(d1, {}).distance, 1.0);
  EXPECT_EQ(bottleneck(d1, {{0.5, 2.5}}).distance, 0.5);
  EXPECT_EQ(bottleneck({}, {}).distance, 0.0);
}

TEST(Bottleneck, InfiniteFeatures) {
  const BottleneckResult same = bottleneck({{0, kInf}, {0.2, kInf}, {0, 1}}, {{0.1, kInf}, {0.35, kInf}});
  EXPECT_FALSE(same.infinite_mismatch);
  EXPECT_NEAR(same.distance, 0.5, 1e-15);
  const BottleneckResult diff = bottleneck({{0, kInf}}, {{0, 1}});
  EXPECT_TRUE(diff.infinite_mismatch);
  EXPECT_TRUE(std::isinf(diff.distance));
  EXPECT_THROW(bottleneck({{1, 0}}, {}), ParameterError);
}

TEST(Bottleneck, MatchesEnumeration) {
  Gen g(6);
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = g.diagram(6), b = g.diagram(6);
    EXPECT_NEAR(bottleneck(a, b).distance, testing::bottleneck_by_enumeration(a, b), 1e-12) << "trial " << trial;
  }
}

TEST(Bottleneck, MetricProperties) {
  Gen g(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto a = g.diagram(30), b = g.diagram(30), c = g.diagram(30);
    const double ab = bottleneck(a, b).distance;
    EXPECT_EQ(ab, bottleneck(b, a).distance);
    EXPECT_LE(bottleneck(a, c).distance, ab + bottleneck(b, c).distance + 1e-12);
  }
}

TEST(Bottleneck, StabilityUnderPerturbation) {
  Gen g(8);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd x = g.points(g.integer(5, 40), 2);
    const Eigen::MatrixXd y = x + g.points(static_cast<int>(x.rows()), 2, g.uniform(0.001, 0.2));
    const double dh = hausdorff(x, y);
    // Half-distance filtration values; on raw distances the bound is 2 d_H.
    RipsOptions o = full_complex();
    o.scale = FiltrationScale::kRadius;
    const PersistenceDiagram dx = rips_persistence(x, o), dy = rips_persistence(y, o);
    for (int dim : {0, 1}) EXPECT_LE(bottleneck(dx, dy, dim).distance, dh + 1e-9);
    o.scale = FiltrationScale::kDistance;
    const PersistenceDiagram rx = rips_persistence(x, o), ry = rips_persistence(y, o);
    for (int dim : {0, 1}) EXPECT_LE(bottleneck(rx, ry, dim).distance, 2.0 * dh + 1e-9);
  }
}

TEST(Lof, MatchesDefinition) {
  Gen g(9);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(static_cast<std::size_t>(g.integer(2, 40)));
    for (double& x : v) x = g.uniform() < 0.1 ? g.uniform(5, 10) : g.uniform();
    const int k = g.integer(1, static_cast<int>(v.size()) - 1);
    const auto got = local_outlier_factors(v, k);
    const auto want = testing::lof_by_definition(v, k);
    for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9 * std::max(1.0, want[i]));
  }
  EXPECT_THROW(local_outlier_factors({1.0, 2.0}, 2), ParameterError);
}

PersistenceFeature h0_feature(double death) {
  PersistenceFeature f;
  f.death = death;
  return f;
}

TEST(OutlierFilter, Examples) {
  std::vector<PersistenceFeature> equal(6, h0_feature(0.3));
  equal.push_back(h0_feature(kInf));
  EXPECT_EQ(persistence_outlier_filter(equal, {}), std::vector<std::size_t>{6});

  std::vector<PersistenceFeature> spike(8, h0_feature(0.1));
  spike.push_back(h0_feature(5.0));
  EXPECT_EQ(persistence_outlier_filter(spike, {}), std::vector<std::size_t>{8});

  EXPECT_EQ(persistence_outlier_filter({h0_feature(kInf)}, {}), std::vector<std::size_t>{0});
  EXPECT_EQ(persistence_outlier_filter({h0_feature(kInf), h0_feature(1.0)}, {}), std::vector<std::size_t>{0});
  OutlierFilterOptions bad;
  bad.q = 0.0;
  EXPECT_THROW(persistence_outlier_filter(spike, bad), ParameterError);
}

// Selection recomputed from the LOF definition, median and mad.
std::set<std::size_t> selection_by_definition(const std::vector<double>& delta, double q, int max_k) {
  const int k = std::min(max_k, static_cast<int>(delta.size()) - 1);
  const auto lof = testing::lof_by_definition(delta, k);
  const double med = testing::median(lof);
  std::vector<double> dev;
  for (double l : lof) dev.push_back(std::abs(l - med));
  const double cut = med + q * testing::median(dev);
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < lof.size(); ++i)
    if (lof[i] > cut) out.insert(i);
  return out;
}

TEST(OutlierFilter, MatchesDefinition) {
  Gen g(10);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<PersistenceFeature> feats;
    std::vector<double> delta;
    const int m = g.integer(2, 60);
    for (int i = 0; i < m; ++i) {
      const double d = g.uniform() < 0.1 ? g.uniform(2, 4) : g.uniform(0, 0.2);
      feats.push_back(h0_feature(d));
      delta.push_back(d);
    }
    const double q = g.uniform(0.5, 12.0);
    OutlierFilterOptions o;
    o.q = q;
    const auto got = persistence_outlier_filter(feats, o);
    EXPECT_EQ(std::set<std::size_t>(got.begin(), got.end()), selection_by_definition(delta, q, 5));
  }
}

TEST(TopoCluster, TwoFarClusters) {
  Gen g(11);
  Eigen::MatrixXd x(20, 2);
  std::vector<int> truth(20);
  for (int i = 0; i < 20; ++i) {
    const double off = i < 10 ? 0.0 : 10.0;
    x(i, 0) = off + g.uniform(0, 0.07);
    x(i, 1) = g.uniform(0, 0.07);
    truth[i] = i < 10 ? 0 : 1;
  }
  // The outlier rule also flags a few within-blob merges, so the blobs may
  // split further, but no cluster crosses the gap.
  const std::vector<int> labels = topo_cluster(x, 10.0);
  for (int i = 0; i < 10; ++i)
    for (int j = 10; j < 20; ++j) EXPECT_NE(labels[i], labels[j]);
  EXPECT_EQ(labels[0], 0);
}

TEST(TopoCluster, ClusterCountFollowsFilter) {
  Gen g(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = g.integer(2, 80);
    const Eigen::MatrixXd x = trial % 2 ? g.gaussian(n, 2) : g.points(n, 2);
    const std::vector<double> deaths = testing::h0_deaths_by_scan(x);
    const std::size_t expected = deaths.size() < 2 ? 1 : 1 + selection_by_definition(deaths, 10.0, 5).size();
    const std::vector<int> labels = topo_cluster(x, 10.0);
    ASSERT_EQ(labels.size(), static_cast<std::size_t>(n));
    const int k = *std::max_element(labels.begin(), labels.end()) + 1;
    EXPECT_EQ(static_cast<std::size_t>(k), expected) << "trial " << trial;
    // Labels appear in order 0, 1, 2, ...
    int next = 0;
    for (int l : labels) {
      EXPECT_LE(l, next);
      if (l == next) ++next;
    }
  }
}

TEST(TopoCluster, SinglePoint) { EXPECT_EQ(topo_cluster(Eigen::MatrixXd::Zero(1, 2), 10.0), std::vector<int>{0}); }

}  // namespace
}  // namespace privgraph
