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

// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select
// criteria by number. Exit status is nonzero if any selected criterion fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "privgraph/align.hpp"
#include "privgraph/clustering.hpp"
#include "privgraph/experiments.hpp"
#include "privgraph/grdpg.hpp"
#include "privgraph/privacy.hpp"
#include "privgraph/rng.hpp"
#include "privgraph/spectral.hpp"
#include "privgraph/tda.hpp"
#include "test_support.hpp"

namespace pg = privgraph;
using pg::testing::Gen;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// NaN (rescaling withheld) counts as the worst possible error.
double median_of(std::vector<double> v) {
  for (double& x : v)
    if (std::isnan(x)) x = INFINITY;
  return pg::testing::median(v);
}

pg::Graph fixed_graph(std::size_t n, double p, std::uint64_t seed) {
  pg::Rng rng(seed);
  pg::Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.set_edge(i, j, pg::uniform01(rng) < p);
  return g;
}

Verdict mechanism_marginals() {
  const std::size_t n = 20;
  const int reps = 10000;
  const pg::Graph A = fixed_graph(n, 0.4, 1);
  int worse = 0;
  double worst_z = 0.0;
  for (double eps : {0.0, std::log(3.0), 2.0, pg::kNoPrivacy}) {
    const pg::PrivacyParams pp = pg::privacy_params(eps);
    std::vector<int> count(A.num_pairs(), 0);
    for (int r = 0; r < reps; ++r) {
      const pg::Graph z = pg::edge_flip(A, eps, pg::derive_seed(7, {static_cast<std::uint64_t>(r)}));
      for (std::size_t k = 0; k < count.size(); ++k) count[k] += z.upper()[k];
    }
    for (std::size_t k = 0; k < count.size(); ++k) {
      const double want = pp.pi + pp.sigma2 * A.upper()[k];
      const double freq = static_cast<double>(count[k]) / reps;
      const double se = std::sqrt(want * (1.0 - want) / reps);
      const double dev = std::abs(freq - want);
      const double z = se > 0.0 ? dev / se : (dev > 0.0 ? INFINITY : 0.0);
      worst_z = std::max(worst_z, z);
      if (z > 3.0) ++worse;
    }
  }
  // Three eps values are random; 2 * (1 - Phi(3)) = 0.0027 per check.
  const double expected = 3.0 * static_cast<double>(A.num_pairs()) * 0.0026998;
  return {worse == 0, fmt("%d of %zu edge checks beyond 3 SE (%.2f expected by chance), max |z| = %.3f", worse,
                          4 * A.num_pairs(), expected, worst_z)};
}

Verdict closure() {
  const std::size_t n = 40;
  const int reps = 5000;
  const double eps = 1.0;
  const pg::LatentDistributionSpec spec{pg::latent::ShiftedCircle{0.5, 0.3}, pg::Signature(2, 0)};
  const pg::LatentPositions X = pg::sample_latent(spec, n, 3);
  const pg::ProbabilityMatrix P = pg::probability_matrix(X, 1.0);
  const pg::LatentPositions L = pg::lift_latents(X, eps, 1.0);
  std::vector<int> count(n * (n - 1) / 2, 0);
  for (int r = 0; r < reps; ++r) {
    const auto ur = static_cast<std::uint64_t>(r);
    const pg::Graph z = pg::edge_flip(pg::sample_graph(P, pg::derive_seed(11, {ur, 1})), eps,
                                      pg::derive_seed(11, {ur, 2}));
    for (std::size_t k = 0; k < count.size(); ++k) count[k] += z.upper()[k];
  }
  int within = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j, ++k) {
      const double want = pg::indefinite_dot(L.X.row(static_cast<Eigen::Index>(i)).transpose(),
                                             L.X.row(static_cast<Eigen::Index>(j)).transpose(), L.sig);
      const double se = std::sqrt(want * (1.0 - want) / reps);
      if (std::abs(static_cast<double>(count[k]) / reps - want) <= 3.0 * se) ++within;
    }
  }
  const double share = static_cast<double>(within) / static_cast<double>(count.size());
  return {share >= 0.99, fmt("%d of %zu pairs within 3 SE (%.4f)", within, count.size(), share)};
}

Verdict composition() {
  double worst_pi = 0.0, worst_ab = 0.0;
  for (int a = 0; a < 10; ++a) {
    for (int b = 0; b < 10; ++b) {
      const double e1 = 0.05 + 0.5 * a, e2 = 0.1 + 0.45 * b;
      const pg::PrivacyParams p1 = pg::privacy_params(e1), p2 = pg::privacy_params(e2);
      const double flip2 = p1.pi * (1.0 - p2.pi) + p2.pi * (1.0 - p1.pi);
      const pg::ComposedPrivacy c = pg::compose_privacy(e1, e2);
      worst_pi = std::max(worst_pi, std::abs(c.pi_prime - flip2));
      const pg::PrivacyParams pc = pg::privacy_params(c.eps_prime);
      const pg::DoubleLiftReduction r = pg::reduce_double_lift(e1, e2);
      worst_ab = std::max({worst_ab, std::abs(r.a - pc.tau), std::abs(r.b - pc.sigma)});
    }
  }
  const bool ok = worst_pi <= 4 * std::numeric_limits<double>::epsilon() && worst_ab <= 1e-12;
  return {ok, fmt("max |pi' - double flip| = %.3g, max |(a, b) - (tau', sigma')| = %.3g", worst_pi, worst_ab)};
}

Verdict pase_identity() {
  Gen g(4);
  int identical = 0;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = static_cast<std::size_t>(g.integer(30, 700));
    const pg::Graph A = fixed_graph(n, g.uniform(0.05, 0.5), g.seed());
    const int d = g.integer(1, 3);
    const pg::PaseResult p = pg::pase(A, pg::kNoPrivacy, d);
    const pg::Embedding e = pg::adjacency_spectral_embedding(A, d);
    const bool same = p.embedding.Xhat.size() == e.Xhat.size() && p.embedding.Xhat == e.Xhat &&
                      p.embedding.eigvals == e.eigvals && p.embedding.eig_signs == e.eig_signs;
    identical += same ? 1 : 0;
  }
  return {identical == 20, fmt("%d of 20 graphs bit-identical (n up to 700, both solver paths)", identical)};
}

pg::ExperimentConfig heatmap_config() {
  pg::ExperimentConfig cfg;
  cfg.experiment = "heatmap";
  cfg.replicates = 10;
  cfg.seed = 2026;
  cfg.record_runtime = false;
  return cfg;
}

Verdict rate_tracking() {
  pg::ExperimentConfig cfg = heatmap_config();
  cfg.n_grid = {400, 800, 1600};
  cfg.eps_grid = {2.0};
  cfg.rho_clip = 0.9;  // rho_n = min(0.9 / max-ip, log^4 n / sqrt n)
  const pg::HeatmapResult res = pg::experiment_heatmap(cfg);
  std::map<long, std::vector<double>> err;
  for (const auto& r : res.rows) err[r.n].push_back(r.d2inf_error);
  const double m400 = median_of(err[400]), m800 = median_of(err[800]), m1600 = median_of(err[1600]);
  const pg::PrivacyParams pp = pg::privacy_params(2.0);
  const auto rate = [&](double n) {
    const double rho = pg::resolve_rho("log4_over_sqrt", static_cast<long>(n), 0.64, 0.9).rho;
    return std::log(n) / std::sqrt(n * pp.sigma2 * pp.sigma2 * rho * rho);
  };
  const double predicted = rate(400) / rate(1600);
  const double observed = m400 / m1600;
  const bool ok = m400 > m800 && m800 > m1600 && observed >= predicted / 2 && observed <= predicted * 2;
  return {ok, fmt("median errors %.4f > %.4f > %.4f; ratio 400/1600 = %.3f vs predicted %.3f", m400, m800,
                  m1600, observed, predicted)};
}

Verdict heatmap_monotone() {
  pg::ExperimentConfig cfg = heatmap_config();
  cfg.n_grid = {200, 400, 800, 1600};
  cfg.eps_grid = {0.5, 1.0, 2.0, 3.0, 5.0, pg::kNoPrivacy};
  const pg::HeatmapResult res = pg::experiment_heatmap(cfg);
  std::map<std::pair<long, double>, std::vector<double>> err;
  for (const auto& r : res.rows) err[{r.n, r.eps}].push_back(r.d2inf_error);
  bool ok = true;
  std::string detail;
  for (long n : cfg.n_grid) {
    int inversions = 0;
    std::string line = fmt("n=%ld:", n);
    double prev = INFINITY;
    for (double eps : cfg.eps_grid) {
      const double m = median_of(err[{n, eps}]);
      if (m > prev) ++inversions;
      prev = m;
      line += fmt(" %.3g", m);
    }
    ok = ok && inversions <= 1;
    detail += line + fmt(" (%d inv); ", inversions);
  }
  return {ok, detail};
}

Verdict h0_oracle() {
  Gen g(7);
  int equal = 0;
  for (int t = 0; t < 200; ++t) {
    const Eigen::MatrixXd x = g.points(g.integer(1, 7), g.integer(1, 3));
    pg::RipsOptions o;
    o.max_dim = 0;
    std::vector<double> got;
    int infinite = 0;
    for (const auto& [b, d] : pg::rips_persistence(x, o).points(0)) {
      if (std::isinf(d)) {
        ++infinite;
      } else {
        got.push_back(d);
      }
    }
    std::sort(got.begin(), got.end());
    equal += infinite == 1 && got == pg::testing::h0_deaths_by_scan(x) ? 1 : 0;
  }
  return {equal == 200, fmt("%d of 200 point sets match the threshold scan exactly", equal)};
}

Verdict bottleneck_oracle() {
  Gen g(8);
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const pg::DiagramPoints a = g.diagram(6), b = g.diagram(6);
    const double got = pg::bottleneck(a, b).distance;
    const double want = pg::testing::bottleneck_by_enumeration(a, b);
    worst = std::max(worst, std::isinf(got) && std::isinf(want) ? 0.0 : std::abs(got - want));
  }
  return {worst <= 1e-12, fmt("max |matching - enumeration| = %.3g over 200 pairs", worst)};
}

Verdict stability() {
  Gen g(9);
  double worst = -INFINITY;
  int ok = 0;
  for (int t = 0; t < 50; ++t) {
    const Eigen::MatrixXd x = g.points(g.integer(5, 60), 2);
    const Eigen::MatrixXd y = x + g.points(static_cast<int>(x.rows()), 2, g.uniform(0.001, 0.2));
    const double dh = pg::hausdorff(x, y);
    pg::RipsOptions o;
    o.max_radius = 1e9;
    o.scale = pg::FiltrationScale::kRadius;
    const pg::PersistenceDiagram dx = pg::rips_persistence(x, o), dy = pg::rips_persistence(y, o);
    bool all = true;
    for (int dim : {0, 1}) {
      const double w = pg::bottleneck(dx, dy, dim).distance;
      worst = std::max(worst, w - dh);
      all = all && w <= dh + 1e-9;
    }
    ok += all ? 1 : 0;
  }
  return {ok == 50, fmt("%d of 50 pairs satisfy W <= d_H + 1e-9 (half-distance filtration); max W - d_H = %.3g",
                        ok, worst)};
}

pg::LemniscateResult lemniscate_run() {
  pg::ExperimentConfig cfg;
  cfg.experiment = "lemniscate";
  cfg.n_grid = {300, 600, 1200};
  cfg.eps_grid = {4.0, pg::kNoPrivacy};
  cfg.replicates = 10;
  cfg.seed = 2026;
  cfg.record_runtime = false;
  return pg::experiment_lemniscate(cfg);
}

const pg::LemniscateResult& lemniscate_cached(double* seconds) {
  static double elapsed = 0.0;
  static const pg::LemniscateResult res = [] {
    const auto t0 = std::chrono::steady_clock::now();
    pg::LemniscateResult r = lemniscate_run();
    elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }();
  *seconds = elapsed;
  return res;
}

Verdict bottleneck_trend(double* seconds) {
  const pg::LemniscateResult& res = lemniscate_cached(seconds);
  std::map<long, std::vector<double>> w;
  for (const auto& r : res.rows)
    if (r.eps == 4.0) w[r.n].push_back(r.bottleneck_h0);
  const double a = median_of(w[300]), b = median_of(w[600]), c = median_of(w[1200]);
  return {a > b && b > c, fmt("median W(H0) at eps=4: n=300 %.4f, n=600 %.4f, n=1200 %.4f", a, b, c)};
}

Verdict topo_clustering(double* seconds) {
  const pg::LemniscateResult& res = lemniscate_cached(seconds);
  std::vector<double> topo, km;
  for (const auto& r : res.rows) {
    if (r.n == 1200 && std::isinf(r.eps)) {
      topo.push_back(r.ari_topo);
      km.push_back(r.ari_kmeans);
    }
  }
  const double mt = median_of(topo), mk = median_of(km);
  return {mt >= 0.9 && mt >= mk, fmt("n=1200 eps=inf median ARI topo %.3f, kmeans %.3f", mt, mk)};
}

Verdict sbm_threshold() {
  pg::ExperimentConfig cfg;
  cfg.experiment = "sbm";
  cfg.n_grid = {1000};
  cfg.replicates = 10;
  cfg.seed = 2026;
  cfg.record_runtime = false;
  const auto [x1, x2] = pg::sbm_latent_pair(cfg.gamma);
  const double rho = pg::resolve_rho(cfg.rho_rule, 1000, x1.squaredNorm(), cfg.rho_clip).rho;
  const double above = pg::sbm_threshold_eps(1000, cfg.gamma, rho, 10.0);
  const double below = pg::sbm_threshold_eps(1000, cfg.gamma, rho, 0.1);
  cfg.eps_grid = {below, above};
  std::map<std::pair<double, std::string>, std::vector<double>> ari;
  for (const auto& r : pg::experiment_sbm(cfg)) ari[{r.eps, r.method}].push_back(r.ari);
  bool ok = true;
  std::string detail = fmt("rho %.3f, eps above %.3f below %.3f;", rho, above, below);
  for (const std::string method : {"pase+kmeans", "pase+topo_cluster"}) {
    const double hi = median_of(ari[{above, method}]), lo = median_of(ari[{below, method}]);
    ok = ok && hi >= 0.9 && lo <= 0.1;
    detail += fmt(" %s above %.3f below %.3f;", method.c_str(), hi, lo);
  }
  return {ok, detail};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Verdict determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "privgraph_acceptance";
  std::filesystem::create_directories(dir);
  const std::vector<std::string> configs = {
      R"({"experiment": "heatmap", "n_grid": [100, 300], "eps_grid": [1, 4, "inf"], "replicates": 3,
          "seed": 5, "record_runtime": false})",
      R"({"experiment": "lemniscate", "n_grid": [60, 120], "eps_grid": [4, "inf"], "replicates": 2,
          "seed": 5, "h1_subsample": 80, "record_runtime": false})",
      R"({"experiment": "sbm", "n_grid": [300], "eps_grid": [0, 1, 3], "replicates": 3, "seed": 5,
          "record_runtime": false})"};
  int same = 0, files = 0;
  for (std::size_t c = 0; c < configs.size(); ++c) {
    const pg::ExperimentConfig cfg = pg::parse_config(configs[c]);
    std::vector<std::string> runs[2];
    for (int run = 0; run < 2; ++run) {
      const auto out = dir / fmt("run%d_%zu.csv", run, c);
      pg::run_experiment(cfg, out.string());
      for (const char* suffix : {"", ".contours.csv", ".reference.csv"}) {
        const auto p = std::filesystem::path(out.string() + suffix);
        if (std::filesystem::exists(p)) runs[run].push_back(slurp(p));
      }
    }
    files += static_cast<int>(runs[0].size());
    same += runs[0] == runs[1] && !runs[0].empty() ? 1 : 0;
  }
  std::filesystem::remove_all(dir);
  return {same == 3, fmt("%d of 3 experiments byte-identical on rerun (%d output files)", same, files)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: no runtime bound
  std::function<Verdict(double*)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const auto plain = [](Verdict (*f)()) { return [f](double*) { return f(); }; };
  const std::vector<Criterion> criteria = {
      {1, "mechanism marginals", 30, plain(mechanism_marginals)},
      {2, "closure", 60, plain(closure)},
      {3, "composition", 0, plain(composition)},
      {4, "pase identity", 0, plain(pase_identity)},
      {5, "rate tracking", 600, plain(rate_tracking)},
      {6, "heatmap monotonicity", 900, plain(heatmap_monotone)},
      {7, "h0 oracle", 0, plain(h0_oracle)},
      {8, "bottleneck oracle", 0, plain(bottleneck_oracle)},
      {9, "stability", 0, plain(stability)},
      {10, "bottleneck convergence trend", 900, bottleneck_trend},
      {11, "topo clustering", 0, topo_clustering},
      {12, "sbm threshold", 300, plain(sbm_threshold)},
      {13, "determinism", 0, plain(determinism)},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!selected.empty() && !selected.count(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    double shared = -1.0;
    Verdict v;
    try {
      v = c.run(&shared);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // Criteria sharing one experiment run are timed on that run.
    if (shared >= 0.0) secs = std::max(secs, shared);
    if (c.budget_s > 0 && secs >= c.budget_s) {
      v.pass = false;
      v.detail += fmt(" [over the %.0f s budget]", c.budget_s);
    }
    failed += v.pass ? 0 : 1;
    std::printf("CRITERION %2d %s: %s (%.1f s) %s\n", c.id, v.pass ? "PASS" : "FAIL", c.name, secs,
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
