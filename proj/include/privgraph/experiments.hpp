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

// Desk-scale experiment drivers: PASE error heatmap over (n, eps), the
// three-component shape with topological summaries, and SBM community
// recovery. Every driver is a pure function of its config.

#ifndef PRIVGRAPH_EXPERIMENTS_HPP_
#define PRIVGRAPH_EXPERIMENTS_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "privgraph/grdpg.hpp"

namespace privgraph {

struct ExperimentConfig {
  std::string experiment;  // heatmap | lemniscate | sbm
  std::vector<long> n_grid;
  std::vector<double> eps_grid;
  // "log4_over_sqrt" (rho_n = log^4 n / sqrt n) or a decimal constant.
  std::string rho_rule = "log4_over_sqrt";
  int replicates = 10;
  std::uint64_t seed = 1;
  int embed_dim = 2;
  Signature sig{2, 0};
  std::string output;

  // rho_n is clipped so that rho_n * (largest inner product) <= rho_clip.
  double rho_clip = 1.0;
  double q = 10.0;
  double gamma = 0.8;
  double imbalance = 0.25;  // share of the smaller SBM block
  std::vector<double> alpha_contours{25.0, 35.0, 55.0};
  double center = 0.5;
  double radius = 0.3;
  // Points used for H1 diagrams (0 disables H1).
  int h1_subsample = 300;
  bool record_runtime = true;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

struct RhoChoice {
  double rho = 1.0;
  bool clipped = false;
};

RhoChoice resolve_rho(const std::string& rule, long n, double max_inner_product, double rho_clip);

// eps at which gamma rho^2 sigma(eps)^4 = margin * log n / n.
double sbm_threshold_eps(long n, double gamma, double rho, double margin);

// eps with sigma(alpha eps)^2 = log n / sqrt(n rho^2); NaN when unreachable.
double contour_eps(long n, double rho, double alpha);

struct HeatmapRow {
  long n = 0;
  double eps = 0.0;
  int replicate = 0;
  double d2inf_error = 0.0;
  double rho_check = 0.0;
  std::string flag;
};

struct ContourRow {
  double alpha = 0.0;
  long n = 0;
  double rho = 0.0;
  double eps = 0.0;
};

struct HeatmapResult {
  std::vector<HeatmapRow> rows;
  std::vector<ContourRow> contours;
};

struct LemniscateRow {
  long n = 0;
  double eps = 0.0;
  int replicate = 0;
  double bottleneck_h0 = 0.0;
  double bottleneck_h1 = 0.0;
  double ari_topo = 0.0;
  double ari_kmeans = 0.0;
  std::string flag;
};

struct ReferenceRow {
  long n = 0;
  double eps = 0.0;
  double reference = 0.0;
};

struct LemniscateResult {
  std::vector<LemniscateRow> rows;
  // log N / sqrt(N sigma^4 rho^2), scaled per eps through the median H0
  // bottleneck at the largest n.
  std::vector<ReferenceRow> reference;
};

struct SbmRow {
  long n = 0;
  double eps = 0.0;
  int replicate = 0;
  std::string method;
  double ari = 0.0;
  double runtime_ms = 0.0;
  std::string flag;
};

HeatmapResult experiment_heatmap(const ExperimentConfig& cfg);
LemniscateResult experiment_lemniscate(const ExperimentConfig& cfg);
std::vector<SbmRow> experiment_sbm(const ExperimentConfig& cfg);

void write_csv(std::ostream& out, const std::vector<HeatmapRow>& rows);
void write_csv(std::ostream& out, const std::vector<ContourRow>& rows);
void write_csv(std::ostream& out, const std::vector<LemniscateRow>& rows);
void write_csv(std::ostream& out, const std::vector<ReferenceRow>& rows);
void write_csv(std::ostream& out, const std::vector<SbmRow>& rows);

// Runs cfg.experiment and writes its CSV to `output` plus sidecar series
// (`<output>.contours.csv`, `<output>.reference.csv`) where applicable.
void run_experiment(const ExperimentConfig& cfg, const std::string& output);

}  // namespace privgraph

#endif  // PRIVGRAPH_EXPERIMENTS_HPP_
