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

// privgraph: command-line front end.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "privgraph/align.hpp"
#include "privgraph/clustering.hpp"
#include "privgraph/errors.hpp"
#include "privgraph/experiments.hpp"
#include "privgraph/grdpg.hpp"
#include "privgraph/io.hpp"
#include "privgraph/privacy.hpp"
#include "privgraph/rng.hpp"
#include "privgraph/spectral.hpp"
#include "privgraph/tda.hpp"

namespace pg = privgraph;

namespace {

pg::Signature parse_sig(const std::string& s) {
  int p = 0;
  int q = 0;
  char comma = 0;
  std::istringstream in(s);
  if (!(in >> p >> comma >> q) || comma != ',') throw pg::ParameterError("--sig expects 'p,q'");
  return pg::Signature(p, q);
}

Eigen::VectorXd parse_vector(const std::string& s) {
  std::vector<double> v;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) v.push_back(pg::io::parse_double(item));
  return Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

double parse_eps(const std::string& s) { return pg::io::parse_double(s); }

struct PointFile {
  Eigen::MatrixXd points;
  std::optional<pg::Signature> sig;
  double scale = 1.0;  // divide by this to put on the model scale
};

// Latent CSV, embedding CSV or a bare numeric CSV.
PointFile read_points(const std::string& path) {
  pg::io::MatrixFile f = pg::io::read_matrix(path);
  PointFile out;
  out.points = std::move(f.data);
  if (out.points.rows() == 0) throw pg::ParameterError("'" + path + "' holds no points");
  if (const auto it = f.header.find("signs"); it != f.header.end()) {
    int p = 0;
    for (char c : it->second) p += c == '+';
    out.sig = pg::Signature(p, static_cast<int>(it->second.size()) - p);
    if (const auto r = f.header.find("rho_check"); r != f.header.end()) {
      out.scale = std::sqrt(pg::io::parse_double(r->second));
    }
  } else if (f.header.count("p") && f.header.count("q")) {
    out.sig = pg::Signature(std::stoi(f.header["p"]), std::stoi(f.header["q"]));
    if (const auto m = f.header.find("mu"); m != f.header.end()) {
      out.scale = std::sqrt(pg::io::parse_double(m->second));
    }
  }
  return out;
}

template <typename Write>
void write_file(const std::string& path, Write&& write) {
  std::ofstream out = pg::io::open_output(path);
  write(out);
  if (!out) throw pg::Error("failed writing '" + path + "'");
}

pg::Graph load_graph(const std::string& path) {
  std::ifstream in = pg::io::open_input(path);
  return pg::io::read_graph(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Private spectral inference on random dot-product graphs"};
  app.require_subcommand(1);

  // sample
  auto* sample = app.add_subcommand("sample", "Sample latent positions and a GRDPG graph");
  std::string dist = "shifted_circle";
  long n = 100;
  std::uint64_t seed = 1;
  double rho = 1.0;
  std::string sig_text = "2,0";
  double center = 0.5;
  double radius = 0.3;
  double gamma = 0.8;
  double alpha = 0.5;
  std::string point_text;
  std::string latent_in;
  std::string latent_out;
  std::string graph_out;
  sample->add_option("--dist", dist, "shifted_circle | lemniscate | dirac | sbm")
      ->check(CLI::IsMember({"shifted_circle", "lemniscate", "dirac", "sbm"}));
  sample->add_option("--n", n, "Number of vertices");
  sample->add_option("--seed", seed, "Base seed");
  sample->add_option("--rho", rho, "Sparsity factor in (0, 1]");
  sample->add_option("--sig", sig_text, "Signature p,q");
  sample->add_option("--center", center, "Circle / shape center offset");
  sample->add_option("--radius", radius, "Circle / shape radius");
  sample->add_option("--gamma", gamma, "SBM contrast in (0, 1]");
  sample->add_option("--alpha", alpha, "SBM share of the first block");
  sample->add_option("--point", point_text, "Dirac support point, comma separated");
  sample->add_option("--latent-in", latent_in, "Use these latent positions instead of sampling");
  sample->add_option("--latent-out", latent_out, "Write latent positions here");
  sample->add_option("--out", graph_out, "Graph output")->required();

  // flip
  auto* flip = app.add_subcommand("flip", "Privatize a graph with edge flipping");
  std::string eps_text;
  std::string in_path;
  std::string out_path;
  flip->add_option("--eps", eps_text, "Privacy budget (number or inf)")->required();
  flip->add_option("--seed", seed, "Seed");
  flip->add_option("--in", in_path, "Input graph")->required();
  flip->add_option("--out", out_path, "Output graph")->required();

  // embed
  auto* embed = app.add_subcommand("embed", "Adjacency spectral embedding");
  int dim = 2;
  embed->add_option("--dim", dim, "Embedding dimension")->required();
  embed->add_option("--in", in_path, "Input graph")->required();
  embed->add_option("--out", out_path, "Embedding CSV")->required();

  // pase
  auto* pase_cmd = app.add_subcommand("pase", "Privacy-adjusted spectral embedding");
  pase_cmd->add_option("--eps", eps_text, "Privacy budget used by the flip")->required();
  pase_cmd->add_option("--dim", dim, "Embedding dimension")->required();
  pase_cmd->add_option("--in", in_path, "Privatized graph")->required();
  pase_cmd->add_option("--out", out_path, "Embedding CSV")->required();

  // metric
  auto* metric = app.add_subcommand("metric", "d_{2,inf} distance between two configurations");
  std::string a_path;
  std::string b_path;
  bool rescale = false;
  metric->add_option("--sig", sig_text, "Signature p,q for files without one")->required();
  metric->add_option("--a", a_path, "First configuration")->required();
  metric->add_option("--b", b_path, "Second configuration")->required();
  metric->add_flag("--rescale", rescale, "Divide latents by sqrt(mu) and embeddings by sqrt(rho_check)");

  // tda
  auto* tda = app.add_subcommand("tda", "Rips persistence diagram");
  int max_dim = 1;
  double max_radius = 0.0;
  std::string scale = "distance";
  tda->add_option("--max-dim", max_dim, "0 or 1")->check(CLI::Range(0, 1));
  tda->add_option("--max-radius", max_radius, "Filtration cutoff (default: enclosing radius)");
  tda->add_option("--scale", scale, "distance | radius")->check(CLI::IsMember({"distance", "radius"}));
  tda->add_option("--in", in_path, "Point CSV")->required();
  tda->add_option("--out", out_path, "Diagram CSV")->required();

  // cluster
  auto* cluster = app.add_subcommand("cluster", "Topology-aware or k-means clustering");
  double q = 10.0;
  std::string method = "topo";
  int k = 2;
  cluster->add_option("--q", q, "Outlier threshold multiplier");
  cluster->add_option("--method", method, "topo | kmeans")->check(CLI::IsMember({"topo", "kmeans"}));
  cluster->add_option("--k", k, "Clusters for k-means");
  cluster->add_option("--seed", seed, "k-means seed");
  cluster->add_option("--in", in_path, "Point CSV")->required();
  cluster->add_option("--out", out_path, "Label CSV")->required();

  // experiment
  auto* experiment = app.add_subcommand("experiment", "Run an experiment grid from a JSON config");
  std::string name;
  std::string config_path;
  experiment->add_option("--name", name, "heatmap | lemniscate | sbm")
      ->check(CLI::IsMember({"heatmap", "lemniscate", "sbm"}));
  experiment->add_option("--config", config_path, "JSON config")->required();
  experiment->add_option("--out", out_path, "Result CSV (default: config 'output')");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sample->parsed()) {
      pg::LatentPositions X;
      if (!latent_in.empty()) {
        std::ifstream in = pg::io::open_input(latent_in);
        X = pg::io::read_latent(in);
      } else {
        if (n < 1) throw pg::ParameterError("--n must be >= 1");
        pg::LatentDistributionSpec spec;
        spec.sig = parse_sig(sig_text);
        if (dist == "shifted_circle") {
          spec.shape = pg::latent::ShiftedCircle{center, radius};
        } else if (dist == "lemniscate") {
          spec.shape = pg::latent::LemniscateMixture{center, radius};
        } else if (dist == "dirac") {
          if (point_text.empty()) throw pg::ParameterError("dirac needs --point");
          spec.shape = pg::latent::Dirac{parse_vector(point_text)};
        } else {
          const auto [x1, x2] = pg::sbm_latent_pair(gamma);
          spec.shape = pg::latent::TwoPoint{x1, x2, alpha};
        }
        X = pg::sample_latent(spec, static_cast<std::size_t>(n), pg::derive_seed(seed, {1}));
      }
      const pg::Graph g = pg::sample_graph(pg::probability_matrix(X, rho), pg::derive_seed(seed, {2}));
      write_file(graph_out, [&](std::ostream& o) { pg::io::write_graph(o, g); });
      if (!latent_out.empty()) write_file(latent_out, [&](std::ostream& o) { pg::io::write_latent(o, X); });
    } else if (flip->parsed()) {
      const pg::Graph z = pg::edge_flip(load_graph(in_path), parse_eps(eps_text), seed);
      write_file(out_path, [&](std::ostream& o) { pg::io::write_graph(o, z); });
    } else if (embed->parsed()) {
      const pg::Graph g = load_graph(in_path);
      const pg::Embedding e = pg::adjacency_spectral_embedding(g, dim);
      if (e.tie_warning) std::cerr << "warning: |lambda_d| ties |lambda_{d+1}|; embedding not unique\n";
      const double density =
          g.num_pairs() ? static_cast<double>(g.num_edges()) / static_cast<double>(g.num_pairs()) : 0.0;
      write_file(out_path, [&](std::ostream& o) { pg::io::write_embedding(o, e, density); });
    } else if (pase_cmd->parsed()) {
      const pg::PaseResult r = pg::pase(load_graph(in_path), parse_eps(eps_text), dim);
      if (r.embedding.tie_warning) std::cerr << "warning: |lambda_d| ties |lambda_{d+1}|; embedding not unique\n";
      if (!r.rescale_valid) std::cerr << "warning: rho_check <= 0; rescaled estimate is invalid\n";
      write_file(out_path, [&](std::ostream& o) { pg::io::write_embedding(o, r.embedding, r.rho_check); });
    } else if (metric->parsed()) {
      const pg::Signature fallback = parse_sig(sig_text);
      const PointFile a = read_points(a_path);
      const PointFile b = read_points(b_path);
      const Eigen::MatrixXd xa = rescale ? Eigen::MatrixXd(a.points / a.scale) : a.points;
      const Eigen::MatrixXd xb = rescale ? Eigen::MatrixXd(b.points / b.scale) : b.points;
      const pg::AlignmentDiagnostics d =
          pg::d_two_infinity_diagnostics(xa, a.sig.value_or(fallback), xb, b.sig.value_or(fallback));
      std::cout << "d2inf=" << pg::io::format_double(d.d2inf) << '\n'
                << "frobenius_residual=" << pg::io::format_double(d.frobenius_residual) << '\n'
                << "orthogonality_error=" << pg::io::format_double(d.orthogonality_error) << '\n'
                << "signature_mismatch=" << (d.signature_mismatch ? "true" : "false") << '\n';
    } else if (tda->parsed()) {
      pg::RipsOptions options;
      options.max_dim = max_dim;
      if (max_radius > 0.0) options.max_radius = max_radius;
      options.scale = scale == "radius" ? pg::FiltrationScale::kRadius : pg::FiltrationScale::kDistance;
      const pg::PersistenceDiagram d = pg::rips_persistence(read_points(in_path).points, options);
      write_file(out_path, [&](std::ostream& o) { pg::io::write_diagram(o, d); });
    } else if (cluster->parsed()) {
      const Eigen::MatrixXd pts = read_points(in_path).points;
      const std::vector<int> labels =
          method == "topo" ? pg::topo_cluster(pts, q) : pg::kmeans(pts, k, seed).labels;
      write_file(out_path, [&](std::ostream& o) { pg::io::write_labels(o, labels); });
    } else if (experiment->parsed()) {
      pg::ExperimentConfig cfg = pg::load_config(config_path);
      if (!name.empty()) {
        if (cfg.experiment != name) {
          throw pg::ParameterError("--name '" + name + "' does not match config experiment '" + cfg.experiment + "'");
        }
      }
      pg::run_experiment(cfg, out_path.empty() ? cfg.output : out_path);
    }
  } catch (const pg::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
