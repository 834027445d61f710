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

#include "privgraph/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "privgraph/errors.hpp"

namespace privgraph::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

int header_int(const std::map<std::string, std::string>& h, const std::string& key) {
  const auto it = h.find(key);
  if (it == h.end()) throw ParameterError("missing header field '" + key + "'");
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw ParameterError("bad integer for header field '" + key + "'");
  }
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

double parse_double(const std::string& raw) {
  const std::string s = trim(raw);
  if (s == "inf" || s == "+inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  if (s == "nan") return NAN;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParameterError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw ParameterError("not a number: '" + s + "'");
  return v;
}

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> out;
  for (const std::string& field : split(line, ',')) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParameterError("malformed header field '" + field + "'");
    out[trim(field.substr(0, eq))] = trim(field.substr(eq + 1));
  }
  return out;
}

MatrixFile read_matrix(std::istream& in) {
  MatrixFile out;
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty()) continue;
    if (first && line.find('=') != std::string::npos) {
      out.header = parse_header(line);
      first = false;
      continue;
    }
    first = false;
    std::vector<double> row;
    for (const std::string& cell : split(line, ',')) row.push_back(parse_double(cell));
    if (!rows.empty() && row.size() != rows.front().size()) throw ParameterError("ragged CSV rows");
    rows.push_back(std::move(row));
  }
  const Eigen::Index cols = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size());
  out.data.resize(static_cast<Eigen::Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) out.data(static_cast<Eigen::Index>(i), j) = rows[i][j];
  }
  return out;
}

MatrixFile read_matrix(const std::string& path) {
  std::ifstream in = open_input(path);
  return read_matrix(in);
}

void write_rows(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_double(m(i, j));
    out << '\n';
  }
}

void write_latent(std::ostream& out, const LatentPositions& X) {
  out << "dim=" << X.dim() << ",p=" << X.sig.p << ",q=" << X.sig.q << ",mu=" << format_double(X.scale_mu)
      << '\n';
  write_rows(out, X.X);
}

LatentPositions read_latent(std::istream& in) {
  MatrixFile f = read_matrix(in);
  LatentPositions X;
  X.sig = Signature(header_int(f.header, "p"), header_int(f.header, "q"));
  if (header_int(f.header, "dim") != X.sig.dim()) throw ParameterError("latent header: dim != p + q");
  if (f.data.rows() > 0 && f.data.cols() != X.sig.dim()) throw ParameterError("latent rows do not match dim");
  const auto mu = f.header.find("mu");
  X.scale_mu = mu == f.header.end() ? 1.0 : parse_double(mu->second);
  X.X = std::move(f.data);
  if (X.X.rows() == 0) X.X.resize(0, X.sig.dim());
  return X;
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "n " << g.num_vertices() << '\n';
  for (const auto& [i, j] : g.edges()) out << i << ' ' << j << '\n';
}

Graph read_graph(std::istream& in) {
  std::string tag;
  long long n = -1;
  if (!(in >> tag >> n) || tag != "n" || n < 0) throw ParameterError("graph file must start with 'n <N>'");
  Graph g(static_cast<std::size_t>(n));
  long long i = 0;
  long long j = 0;
  while (in >> i >> j) {
    if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw ParameterError("graph file: bad edge");
    g.set_edge(static_cast<std::size_t>(i), static_cast<std::size_t>(j), true);
  }
  if (!in.eof()) throw ParameterError("graph file: malformed edge line");
  return g;
}

void write_embedding(std::ostream& out, const Embedding& e, double rho_check) {
  std::string signs;
  for (int s : e.eig_signs) signs += s > 0 ? '+' : '-';
  out << "dim=" << e.Xhat.cols() << ",signs=" << signs << ",rho_check=" << format_double(rho_check) << '\n';
  write_rows(out, e.Xhat);
}

Signature EmbeddingFile::signature() const {
  int p = 0;
  for (int s : signs) p += s > 0;
  return Signature(p, static_cast<int>(signs.size()) - p);
}

EmbeddingFile read_embedding(std::istream& in) {
  MatrixFile f = read_matrix(in);
  EmbeddingFile e;
  const auto it = f.header.find("signs");
  if (it == f.header.end()) throw ParameterError("embedding header lacks 'signs'");
  for (char c : it->second) {
    if (c != '+' && c != '-') throw ParameterError("embedding signs must be '+' or '-'");
    e.signs.push_back(c == '+' ? 1 : -1);
  }
  const auto rho = f.header.find("rho_check");
  e.rho_check = rho == f.header.end() ? NAN : parse_double(rho->second);
  e.Xhat = std::move(f.data);
  if (e.Xhat.cols() != static_cast<Eigen::Index>(e.signs.size())) {
    throw ParameterError("embedding rows do not match signs");
  }
  return e;
}

void write_diagram(std::ostream& out, const PersistenceDiagram& d) {
  out << "dim,birth,death\n";
  for (const auto& f : d.features) {
    out << f.dim << ',' << format_double(f.birth) << ',' << format_double(f.death) << '\n';
  }
}

void write_labels(std::ostream& out, const std::vector<int>& labels) {
  out << "label\n";
  for (int l : labels) out << l << '\n';
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace privgraph::io
