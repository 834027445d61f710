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

// Text formats: latent CSV, edge-list graphs, embeddings, diagrams, labels.
// Floats are written with 9 significant digits; infinities and NaN as
// lowercase `inf` / `nan`.

#ifndef PRIVGRAPH_IO_HPP_
#define PRIVGRAPH_IO_HPP_

#include <Eigen/Dense>

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "privgraph/grdpg.hpp"
#include "privgraph/spectral.hpp"
#include "privgraph/tda.hpp"

namespace privgraph::io {

std::string format_double(double x);
double parse_double(const std::string& s);

// `key=value,key=value` header lines.
std::map<std::string, std::string> parse_header(const std::string& line);

// Numeric CSV body with an optional `key=value` header line.
struct MatrixFile {
  Eigen::MatrixXd data;
  std::map<std::string, std::string> header;
};
MatrixFile read_matrix(std::istream& in);
MatrixFile read_matrix(const std::string& path);
void write_rows(std::ostream& out, const Eigen::MatrixXd& m);

void write_latent(std::ostream& out, const LatentPositions& X);
LatentPositions read_latent(std::istream& in);

void write_graph(std::ostream& out, const Graph& g);
Graph read_graph(std::istream& in);

void write_embedding(std::ostream& out, const Embedding& e, double rho_check);
struct EmbeddingFile {
  Eigen::MatrixXd Xhat;
  std::vector<int> signs;
  double rho_check = 0.0;
  Signature signature() const;
};
EmbeddingFile read_embedding(std::istream& in);

void write_diagram(std::ostream& out, const PersistenceDiagram& d);
void write_labels(std::ostream& out, const std::vector<int>& labels);

std::ifstream open_input(const std::string& path);
std::ofstream open_output(const std::string& path);

}  // namespace privgraph::io

#endif  // PRIVGRAPH_IO_HPP_
