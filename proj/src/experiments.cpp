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

#include "privgraph/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "privgraph/align.hpp"
#include "privgraph/clustering.hpp"
#include "privgraph/errors.hpp"
#include "privgraph/io.hpp"
#include "privgraph/privacy.hpp"
#include "privgraph/rng.hpp"
#include "privgraph/spectral.hpp"
#include "privgraph/tda.hpp"

namespace privgraph {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

enum Stream : std::uint64_t { kLatentStream = 1, kGraphStream, kFlipStream, kSubsampleStream, kKMeansStream };

std::uint64_t stream_seed(const ExperimentConfig& cfg, int rep, long n, Stream s) {
  return derive_seed(replicate_seed(cfg.seed, static_cast<std::uint64_t>(rep)),
                     {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(s)});
}

void add_flag(std::string& flags, const std::string& f) {
  if (!flags.empty()) flags += '|';
  flags += f;
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.n_grid.empty() || cfg.eps_grid.empty()) throw ParameterError("config: grids must be nonempty");
  if (cfg.replicates < 1) throw ParameterError("config: replicates must be >= 1");
  for (long n : cfg.n_grid) {
    if (n < 2) throw ParameterError("config: every n must be >= 2");
  }
  for (double e : cfg.eps_grid) {
    if (std::isnan(e) || e < 0.0) throw ParameterError("config: eps must be >= 0");
  }
  if (cfg.embed_dim < 1) throw ParameterError("config: embed_dim must be >= 1");
  if (!(cfg.rho_clip > 0.0 && cfg.rho_clip <= 1.0)) throw ParameterError("config: rho_clip must lie in (0, 1]");
}

struct Model {
  LatentPositions X;
  Graph A;
  RhoChoice rho;
  Eigen::MatrixXd reference;  // X / sqrt(mu)
};

// Latents, graph and reference configuration for one (n, replicate). These
// streams do not depend on eps, so every eps sees the same underlying graph.
Model build_model(const ExperimentConfig& cfg, const LatentDistributionSpec& spec, long n, int rep) {
  Model m;
  m.X = sample_latent(spec, static_cast<std::size_t>(n), stream_seed(cfg, rep, n, kLatentStream));
  m.rho = resolve_rho(cfg.rho_rule, n, inner_product_range(spec).second, cfg.rho_clip);
  LatentPositions scaled = m.X;
  double rho = m.rho.rho;
  if (rho > 1.0) {
    // Probabilities only depend on rho X I X^T, so fold rho > 1 into X.
    scaled.X *= std::sqrt(rho);
    rho = 1.0;
  }
  m.A = sample_graph(probability_matrix(scaled, rho), stream_seed(cfg, rep, n, kGraphStream));
  m.reference = m.X.X / std::sqrt(m.X.scale_mu);
  return m;
}

template <typename Task>
void parallel_tasks(std::size_t count, Task&& task) {
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t t = 0; t < count; ++t) {
    try {
      task(t);
    } catch (...) {
#pragma omp critical(privgraph_experiment_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<Eigen::Index> subsample(Eigen::Index n, int k, std::uint64_t seed) {
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) idx[i] = i;
  if (k <= 0 || k >= n) return idx;
  Rng rng(seed);
  for (int i = 0; i < k; ++i) {
    const auto span = static_cast<double>(n - i);
    const auto j = i + std::min(static_cast<Eigen::Index>(uniform01(rng) * span), n - i - 1);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(idx[i]);
  return out;
}

double median_ignoring_nan(std::vector<double> v) {
  v.erase(std::remove_if(v.begin(), v.end(), [](double x) { return std::isnan(x); }), v.end());
  if (v.empty()) return kNaN;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

double elapsed_ms(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

using io::format_double;

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParameterError("config: expected a JSON object");
  ExperimentConfig cfg;
  const auto number = [](const json& v, const std::string& key) -> double {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return io::parse_double(v.get<std::string>());
    throw ParameterError("config: '" + key + "' must be a number");
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "experiment") {
        cfg.experiment = v.get<std::string>();
      } else if (key == "n_grid") {
        cfg.n_grid = v.get<std::vector<long>>();
      } else if (key == "eps_grid") {
        cfg.eps_grid.clear();
        for (const auto& e : v) cfg.eps_grid.push_back(number(e, key));
      } else if (key == "rho_rule") {
        cfg.rho_rule = v.is_string() ? v.get<std::string>() : format_double(v.get<double>());
      } else if (key == "replicates") {
        cfg.replicates = v.get<int>();
      } else if (key == "seed") {
        cfg.seed = v.get<std::uint64_t>();
      } else if (key == "embed_dim") {
        cfg.embed_dim = v.get<int>();
      } else if (key == "sig") {
        const auto pq = v.get<std::vector<int>>();
        if (pq.size() != 2) throw ParameterError("config: 'sig' must be [p, q]");
        cfg.sig = Signature(pq[0], pq[1]);
      } else if (key == "output") {
        cfg.output = v.get<std::string>();
      } else if (key == "rho_clip") {
        cfg.rho_clip = number(v, key);
      } else if (key == "q") {
        cfg.q = number(v, key);
      } else if (key == "gamma") {
        cfg.gamma = number(v, key);
      } else if (key == "imbalance") {
        cfg.imbalance = number(v, key);
      } else if (key == "alpha_contours") {
        cfg.alpha_contours = v.get<std::vector<double>>();
      } else if (key == "center") {
        cfg.center = number(v, key);
      } else if (key == "radius") {
        cfg.radius = number(v, key);
      } else if (key == "h1_subsample") {
        cfg.h1_subsample = v.get<int>();
      } else if (key == "record_runtime") {
        cfg.record_runtime = v.get<bool>();
      } else {
        throw ParameterError("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ParameterError(std::string("config: ") + e.what());
  }
  if (cfg.experiment.empty()) throw ParameterError("config: missing 'experiment'");
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in = io::open_input(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

RhoChoice resolve_rho(const std::string& rule, long n, double max_inner_product, double rho_clip) {
  RhoChoice out;
  if (rule == "log4_over_sqrt") {
    out.rho = std::pow(std::log(static_cast<double>(n)), 4) / std::sqrt(static_cast<double>(n));
  } else {
    out.rho = io::parse_double(rule);
  }
  if (!(out.rho > 0.0) || std::isinf(out.rho)) throw ParameterError("rho rule must give a positive finite rho");
  if (max_inner_product > 0.0 && out.rho * max_inner_product > rho_clip) {
    out.rho = rho_clip / max_inner_product;
    out.clipped = true;
  }
  return out;
}

double sbm_threshold_eps(long n, double gamma, double rho, double margin) {
  const double nd = static_cast<double>(n);
  const double sigma2 = std::sqrt(margin * std::log(nd) / (nd * gamma * rho * rho));
  if (!(sigma2 < 1.0)) return kNaN;
  return 2.0 * std::atanh(sigma2);
}

double contour_eps(long n, double rho, double alpha) {
  const double nd = static_cast<double>(n);
  const double sigma2 = std::log(nd) / (std::sqrt(nd) * rho);
  if (!(sigma2 < 1.0)) return kNaN;
  return 2.0 * std::atanh(sigma2) / alpha;
}

HeatmapResult experiment_heatmap(const ExperimentConfig& cfg) {
  validate(cfg);
  const LatentDistributionSpec spec{latent::ShiftedCircle{cfg.center, cfg.radius}, cfg.sig};
  check_admissible(spec);
  const std::size_t ne = cfg.eps_grid.size();
  const auto reps = static_cast<std::size_t>(cfg.replicates);
  HeatmapResult result;
  result.rows.resize(cfg.n_grid.size() * ne * reps);

  parallel_tasks(cfg.n_grid.size() * reps, [&](std::size_t task) {
    const std::size_t ni = task / reps;
    const int rep = static_cast<int>(task % reps);
    const long n = cfg.n_grid[ni];
    const Model m = build_model(cfg, spec, n, rep);
    for (std::size_t ei = 0; ei < ne; ++ei) {
      const double eps = cfg.eps_grid[ei];
      HeatmapRow& row = result.rows[(ni * ne + ei) * reps + static_cast<std::size_t>(rep)];
      row = {n, eps, rep, kNaN, kNaN, ""};
      if (m.rho.clipped) add_flag(row.flag, "rho_clipped");
      if (eps == 0.0) {
        add_flag(row.flag, "no_signal");
        continue;
      }
      const Graph Z = edge_flip(m.A, eps, stream_seed(cfg, rep, n, kFlipStream));
      const PaseResult res = pase(Z, eps, cfg.embed_dim);
      row.rho_check = res.rho_check;
      if (!res.rescale_valid) {
        add_flag(row.flag, "rescale_invalid");
        continue;
      }
      try {
        const AlignmentDiagnostics diag =
            d_two_infinity_diagnostics(m.reference, cfg.sig, res.rescaled(), res.embedding.signature());
        row.d2inf_error = diag.d2inf;
        if (diag.signature_mismatch) add_flag(row.flag, "signature_mismatch");
      } catch (const DegenerateInputError&) {
        add_flag(row.flag, "degenerate");
      }
    }
  });

  const double max_ip = inner_product_range(spec).second;
  for (double alpha : cfg.alpha_contours) {
    for (long n : cfg.n_grid) {
      const double rho = resolve_rho(cfg.rho_rule, n, max_ip, cfg.rho_clip).rho;
      result.contours.push_back({alpha, n, rho, contour_eps(n, rho, alpha)});
    }
  }
  return result;
}

LemniscateResult experiment_lemniscate(const ExperimentConfig& cfg) {
  validate(cfg);
  const LatentDistributionSpec spec{latent::LemniscateMixture{cfg.center, cfg.radius}, cfg.sig};
  check_admissible(spec);
  const std::size_t ne = cfg.eps_grid.size();
  const auto reps = static_cast<std::size_t>(cfg.replicates);
  LemniscateResult result;
  result.rows.resize(cfg.n_grid.size() * ne * reps);
  std::vector<double> rho_of_n(cfg.n_grid.size());

  parallel_tasks(cfg.n_grid.size() * reps, [&](std::size_t task) {
    const std::size_t ni = task / reps;
    const int rep = static_cast<int>(task % reps);
    const long n = cfg.n_grid[ni];
    const long big_n = 4 * n;  // 2n circle + n lemniscate + n cluster
    const Model m = build_model(cfg, spec, big_n, rep);
    if (rep == 0) rho_of_n[ni] = m.rho.rho;
    const std::vector<int>& truth = m.X.labels;

    RipsOptions h0_only;
    h0_only.max_dim = 0;
    const PersistenceDiagram ref_h0 = rips_persistence(m.reference, h0_only);
    const std::vector<Eigen::Index> sub =
        subsample(m.reference.rows(), cfg.h1_subsample, stream_seed(cfg, rep, big_n, kSubsampleStream));
    PersistenceDiagram ref_h1;
    if (cfg.h1_subsample > 0) ref_h1 = rips_persistence(take_rows(m.reference, sub));

    for (std::size_t ei = 0; ei < ne; ++ei) {
      const double eps = cfg.eps_grid[ei];
      LemniscateRow& row = result.rows[(ni * ne + ei) * reps + static_cast<std::size_t>(rep)];
      row = {n, eps, rep, kNaN, kNaN, kNaN, kNaN, ""};
      if (m.rho.clipped) add_flag(row.flag, "rho_clipped");
      if (eps == 0.0) {
        add_flag(row.flag, "no_signal");
        continue;
      }
      const Graph Z = edge_flip(m.A, eps, stream_seed(cfg, rep, big_n, kFlipStream));
      const PaseResult res = pase(Z, eps, cfg.embed_dim);
      if (!res.rescale_valid) {
        add_flag(row.flag, "rescale_invalid");
        continue;
      }
      const Eigen::MatrixXd est = res.rescaled();
      if (est.cols() != m.reference.cols()) throw ParameterError("lemniscate: embed_dim must equal the latent dimension");
      const BottleneckResult b0 = bottleneck(ref_h0, rips_persistence(est, h0_only), 0);
      row.bottleneck_h0 = b0.distance;
      if (b0.infinite_mismatch) add_flag(row.flag, "h0_infinite_mismatch");
      if (cfg.h1_subsample > 0) {
        const BottleneckResult b1 = bottleneck(ref_h1, rips_persistence(take_rows(est, sub)), 1);
        row.bottleneck_h1 = b1.distance;
        if (b1.infinite_mismatch) add_flag(row.flag, "h1_infinite_mismatch");
      }
      row.ari_topo = adjusted_rand_index(topo_cluster(est, cfg.q), truth);
      row.ari_kmeans =
          adjusted_rand_index(kmeans(est, 3, stream_seed(cfg, rep, big_n, kKMeansStream)).labels, truth);
    }
  });

  // Reference rate curve through the median H0 bottleneck at the largest n.
  const std::size_t last = cfg.n_grid.size() - 1;
  for (std::size_t ei = 0; ei < ne; ++ei) {
    const double eps = cfg.eps_grid[ei];
    const double sigma2 = privacy_params(eps).sigma2;
    const auto rate = [&](std::size_t ni) {
      const double big_n = 4.0 * static_cast<double>(cfg.n_grid[ni]);
      return std::log(big_n) / std::sqrt(big_n * sigma2 * sigma2 * rho_of_n[ni] * rho_of_n[ni]);
    };
    std::vector<double> at_last;
    for (std::size_t r = 0; r < reps; ++r) at_last.push_back(result.rows[(last * ne + ei) * reps + r].bottleneck_h0);
    const double scale = median_ignoring_nan(at_last) / rate(last);
    for (std::size_t ni = 0; ni < cfg.n_grid.size(); ++ni) {
      result.reference.push_back({cfg.n_grid[ni], eps, scale * rate(ni)});
    }
  }
  return result;
}

std::vector<SbmRow> experiment_sbm(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.sig.dim() != 2) throw ParameterError("sbm: signature must be two-dimensional");
  if (!(cfg.imbalance > 0.0 && cfg.imbalance < 1.0)) throw ParameterError("sbm: imbalance must lie in (0, 1)");
  const auto [x1, x2] = sbm_latent_pair(cfg.gamma);
  const LatentDistributionSpec spec{latent::TwoPoint{x1, x2, cfg.imbalance}, cfg.sig};
  check_admissible(spec);
  const std::size_t ne = cfg.eps_grid.size();
  const auto reps = static_cast<std::size_t>(cfg.replicates);
  std::vector<SbmRow> rows(cfg.n_grid.size() * ne * reps * 2);

  parallel_tasks(cfg.n_grid.size() * reps, [&](std::size_t task) {
    const std::size_t ni = task / reps;
    const int rep = static_cast<int>(task % reps);
    const long n = cfg.n_grid[ni];
    const Model m = build_model(cfg, spec, n, rep);
    for (std::size_t ei = 0; ei < ne; ++ei) {
      const double eps = cfg.eps_grid[ei];
      SbmRow* out = &rows[((ni * ne + ei) * reps + static_cast<std::size_t>(rep)) * 2];
      out[0] = {n, eps, rep, "pase+kmeans", kNaN, kNaN, ""};
      out[1] = {n, eps, rep, "pase+topo_cluster", kNaN, kNaN, ""};
      std::string flag;
      if (m.rho.clipped) add_flag(flag, "rho_clipped");
      if (eps == 0.0) add_flag(flag, "no_signal");
      out[0].flag = out[1].flag = flag;
      if (eps == 0.0) continue;
      const Graph Z = edge_flip(m.A, eps, stream_seed(cfg, rep, n, kFlipStream));
      const auto t0 = std::chrono::steady_clock::now();
      const PaseResult res = pase(Z, eps, cfg.embed_dim);
      const auto t1 = std::chrono::steady_clock::now();
      // Clustering is scale invariant, so the unscaled embedding serves even
      // when rho_check <= 0.
      const std::vector<int> km =
          kmeans(res.embedding.Xhat, 2, stream_seed(cfg, rep, n, kKMeansStream)).labels;
      const auto t2 = std::chrono::steady_clock::now();
      const std::vector<int> topo = topo_cluster(res.embedding.Xhat, cfg.q);
      const auto t3 = std::chrono::steady_clock::now();
      out[0].ari = adjusted_rand_index(km, m.X.labels);
      out[1].ari = adjusted_rand_index(topo, m.X.labels);
      if (cfg.record_runtime) {
        out[0].runtime_ms = elapsed_ms(t0, t1) + elapsed_ms(t1, t2);
        out[1].runtime_ms = elapsed_ms(t0, t1) + elapsed_ms(t2, t3);
      }
    }
  });
  return rows;
}

void write_csv(std::ostream& out, const std::vector<HeatmapRow>& rows) {
  out << "n,eps,replicate,d2inf_error,rho_check,flag\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.eps) << ',' << r.replicate << ',' << format_double(r.d2inf_error) << ','
        << format_double(r.rho_check) << ',' << csv_text(r.flag) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<ContourRow>& rows) {
  out << "alpha,n,rho,eps\n";
  for (const auto& r : rows) {
    out << format_double(r.alpha) << ',' << r.n << ',' << format_double(r.rho) << ',' << format_double(r.eps)
        << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<LemniscateRow>& rows) {
  out << "n,eps,replicate,bottleneck_h0,bottleneck_h1,ari_topo,ari_kmeans,flag\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.eps) << ',' << r.replicate << ',' << format_double(r.bottleneck_h0)
        << ',' << format_double(r.bottleneck_h1) << ',' << format_double(r.ari_topo) << ','
        << format_double(r.ari_kmeans) << ',' << csv_text(r.flag) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<ReferenceRow>& rows) {
  out << "n,eps,reference\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.eps) << ',' << format_double(r.reference) << '\n';
  }
}

void write_csv(std::ostream& out, const std::vector<SbmRow>& rows) {
  out << "n,eps,replicate,method,ari,runtime_ms,flag\n";
  for (const auto& r : rows) {
    out << r.n << ',' << format_double(r.eps) << ',' << r.replicate << ',' << r.method << ','
        << format_double(r.ari) << ',' << format_double(r.runtime_ms) << ',' << csv_text(r.flag) << '\n';
  }
}

void run_experiment(const ExperimentConfig& cfg, const std::string& output) {
  if (output.empty()) throw ParameterError("experiment: no output path");
  if (cfg.experiment == "heatmap") {
    const HeatmapResult r = experiment_heatmap(cfg);
    std::ofstream out = io::open_output(output);
    write_csv(out, r.rows);
    std::ofstream side = io::open_output(output + ".contours.csv");
    write_csv(side, r.contours);
  } else if (cfg.experiment == "lemniscate") {
    const LemniscateResult r = experiment_lemniscate(cfg);
    std::ofstream out = io::open_output(output);
    write_csv(out, r.rows);
    std::ofstream side = io::open_output(output + ".reference.csv");
    write_csv(side, r.reference);
  } else if (cfg.experiment == "sbm") {
    const std::vector<SbmRow> rows = experiment_sbm(cfg);
    std::ofstream out = io::open_output(output);
    write_csv(out, rows);
  } else {
    throw ParameterError("unknown experiment '" + cfg.experiment + "'");
  }
}

}  // namespace privgraph
