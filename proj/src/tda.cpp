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

#include "privgraph/tda.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>
#include <unordered_map>

#include "privgraph/errors.hpp"
#include "privgraph/kernels.hpp"
#include "privgraph/union_find.hpp"

namespace privgraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using kernels::WeightedEdge;

// H0 pairs from the MST under the elder rule: every vertex is born at 0, so
// the component with the larger representative dies.
std::vector<PersistenceFeature> h0_features(const std::vector<WeightedEdge>& mst, Eigen::Index n,
                                            double cutoff, double factor) {
  std::vector<PersistenceFeature> out;
  UnionFind uf(static_cast<std::size_t>(n));
  for (const WeightedEdge& e : mst) {
    if (e.length > cutoff) break;
    const std::size_t a = uf.find(static_cast<std::size_t>(e.u));
    const std::size_t b = uf.find(static_cast<std::size_t>(e.v));
    uf.unite(a, b);
    if (e.length > 0.0) {
      out.push_back({0, 0.0, e.length * factor, {static_cast<int>(std::max(a, b))}, {e.u, e.v}});
    }
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    if (uf.find(static_cast<std::size_t>(i)) == static_cast<std::size_t>(i)) {
      out.push_back({0, 0.0, kInf, {static_cast<int>(i)}, {}});
    }
  }
  return out;
}

// Persistent cohomology in degree 1 over Z/2. Edges are processed in reverse
// filtration order; Kruskal edges are skipped since they already pair with
// vertices. Triangles are ordered by (largest edge, middle edge, smallest
// edge), and the pivot of a coboundary column is its earliest triangle.
// Only the reduction combinations are stored; coboundaries are regenerated
// into a heap when a column needs reducing.
class CoboundaryReducer {
 public:
  CoboundaryReducer(const Eigen::MatrixXd& points, double cutoff) : n_(static_cast<std::size_t>(points.rows())) {
    for (Eigen::Index i = 0; i < points.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < points.rows(); ++j) {
        const double len = kernels::row_distance(points, i, j);
        if (len <= cutoff) edges_.push_back({len, static_cast<std::int32_t>(i), static_cast<std::int32_t>(j)});
      }
    }
    std::sort(edges_.begin(), edges_.end());
    m_ = static_cast<std::int64_t>(edges_.size());
    index_.assign(n_ * n_, -1);
    for (std::int32_t e = 0; e < static_cast<std::int32_t>(m_); ++e) {
      const auto u = static_cast<std::size_t>(edges_[e].u);
      const auto v = static_cast<std::size_t>(edges_[e].v);
      index_[u * n_ + v] = e;
      index_[v * n_ + u] = e;
    }
  }

  const std::vector<WeightedEdge>& edges() const { return edges_; }

  std::int64_t key(std::int32_t a, std::int32_t b, std::int32_t c) const {
    const std::int64_t hi = std::max({a, b, c});
    const std::int64_t lo = std::min({a, b, c});
    const std::int64_t mid = std::int64_t{a} + b + c - hi - lo;
    return (hi * m_ + mid) * m_ + lo;
  }
  std::int32_t largest_edge(std::int64_t key) const { return static_cast<std::int32_t>(key / (m_ * m_)); }
  std::int32_t smallest_edge(std::int64_t key) const { return static_cast<std::int32_t>(key % m_); }

  template <typename Visit>
  void for_each_coface(std::int32_t e, Visit&& visit) const {
    const auto u = static_cast<std::size_t>(edges_[e].u);
    const auto v = static_cast<std::size_t>(edges_[e].v);
    for (std::size_t k = 0; k < n_; ++k) {
      const std::int32_t a = index_[u * n_ + k];
      const std::int32_t b = index_[v * n_ + k];
      if (a >= 0 && b >= 0) visit(key(a, b, e));
    }
  }

  std::int64_t earliest_coface(std::int32_t e) const {
    std::int64_t best = -1;
    for_each_coface(e, [&](std::int64_t t) {
      if (best < 0 || t < best) best = t;
    });
    return best;
  }

 private:
  std::size_t n_;
  std::int64_t m_ = 0;
  std::vector<WeightedEdge> edges_;
  std::vector<std::int32_t> index_;
};

std::vector<PersistenceFeature> h1_features(const Eigen::MatrixXd& points, double cutoff, double factor) {
  std::vector<PersistenceFeature> out;
  if (points.rows() < 3) return out;
  const CoboundaryReducer cob(points, cutoff);
  const std::vector<WeightedEdge>& edges = cob.edges();
  const auto num_edges = static_cast<std::int32_t>(edges.size());

  UnionFind uf(static_cast<std::size_t>(points.rows()));
  std::vector<char> positive(edges.size(), 0);
  for (std::int32_t e = 0; e < num_edges; ++e) {
    if (!uf.unite(static_cast<std::size_t>(edges[e].u), static_cast<std::size_t>(edges[e].v))) positive[e] = 1;
  }

  std::unordered_map<std::int64_t, std::int32_t> pivot_of;             // triangle key -> edge
  std::unordered_map<std::int32_t, std::vector<std::int32_t>> combo;   // edge -> summed edges
  std::priority_queue<std::int64_t, std::vector<std::int64_t>, std::greater<>> heap;
  std::vector<std::int32_t> working;

  // Pops the earliest triangle with odd multiplicity, or -1.
  const auto pop_pivot = [&heap]() -> std::int64_t {
    while (!heap.empty()) {
      const std::int64_t t = heap.top();
      heap.pop();
      if (!heap.empty() && heap.top() == t) {
        heap.pop();
        continue;
      }
      return t;
    }
    return -1;
  };
  const auto push_column = [&](std::int32_t e) {
    for (std::int32_t f : combo.count(e) ? combo.at(e) : std::vector<std::int32_t>{e}) {
      working.push_back(f);
      cob.for_each_coface(f, [&heap](std::int64_t t) { heap.push(t); });
    }
  };

  for (std::int32_t e = num_edges - 1; e >= 0; --e) {
    if (!positive[e]) continue;
    std::int64_t pivot = cob.earliest_coface(e);
    if (pivot >= 0 && pivot_of.count(pivot)) {
      heap = {};
      working.clear();
      push_column(e);
      pivot = pop_pivot();
      while (pivot >= 0) {
        const auto it = pivot_of.find(pivot);
        if (it == pivot_of.end()) break;
        heap.push(pivot);
        push_column(it->second);
        pivot = pop_pivot();
      }
      if (pivot >= 0) {
        std::sort(working.begin(), working.end());
        std::vector<std::int32_t> odd;
        for (std::size_t i = 0; i < working.size();) {
          std::size_t j = i;
          while (j < working.size() && working[j] == working[i]) ++j;
          if ((j - i) % 2 == 1) odd.push_back(working[i]);
          i = j;
        }
        combo.emplace(e, std::move(odd));
      }
    }
    const WeightedEdge& born = edges[e];
    if (pivot < 0) {
      out.push_back({1, born.length * factor, kInf, {born.u, born.v}, {}});
      continue;
    }
    pivot_of.emplace(pivot, e);
    const WeightedEdge& killer = edges[cob.largest_edge(pivot)];
    if (born.length < killer.length) {
      // The apex is the vertex of the pivot triangle off its largest edge.
      const WeightedEdge& low = edges[cob.smallest_edge(pivot)];
      const int apex = (low.u == killer.u || low.u == killer.v) ? low.v : low.u;
      out.push_back({1, born.length * factor, killer.length * factor, {born.u, born.v},
                     {killer.u, killer.v, apex}});
    }
  }
  std::sort(out.begin(), out.end(), [](const PersistenceFeature& a, const PersistenceFeature& b) {
    return std::tie(a.birth, a.death) < std::tie(b.birth, b.death);
  });
  return out;
}

struct Point {
  double birth;
  double death;
};

double linf(const Point& a, const Point& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double half_persistence(const Point& p) { return 0.5 * (p.death - p.birth); }

// Points of `pool` within l-infinity distance t of `a`; pool is sorted by death.
template <typename Visit>
void for_each_near(const std::vector<Point>& pool, const Point& a, double t, Visit&& visit) {
  const double slack = 1e-9 * (std::abs(a.death) + t + 1.0);
  auto it = std::lower_bound(pool.begin(), pool.end(), a.death - t - slack,
                             [](const Point& p, double x) { return p.death < x; });
  for (; it != pool.end() && it->death <= a.death + t + slack; ++it) {
    visit(static_cast<int>(it - pool.begin()), linf(a, *it));
  }
}

// Hopcroft-Karp: does some matching of edges with length <= t cover every
// point of `left`?
bool saturates(const std::vector<Point>& left, const std::vector<Point>& right, double t) {
  const int nl = static_cast<int>(left.size());
  const int nr = static_cast<int>(right.size());
  if (nl == 0) return true;
  if (nl > nr) return false;
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(nl));
  for (int i = 0; i < nl; ++i) {
    for_each_near(right, left[i], t, [&](int j, double dist) {
      if (dist <= t) adj[i].push_back(j);
    });
    if (adj[i].empty()) return false;
  }
  std::vector<int> match_l(static_cast<std::size_t>(nl), -1);
  std::vector<int> match_r(static_cast<std::size_t>(nr), -1);
  std::vector<int> level(static_cast<std::size_t>(nl));
  std::vector<std::size_t> cursor(static_cast<std::size_t>(nl));
  int matched = 0;
  for (;;) {
    std::queue<int> bfs;
    for (int i = 0; i < nl; ++i) {
      level[i] = match_l[i] < 0 ? 0 : -1;
      if (match_l[i] < 0) bfs.push(i);
    }
    bool found = false;
    while (!bfs.empty()) {
      const int i = bfs.front();
      bfs.pop();
      for (int j : adj[i]) {
        const int k = match_r[j];
        if (k < 0) {
          found = true;
        } else if (level[k] < 0) {
          level[k] = level[i] + 1;
          bfs.push(k);
        }
      }
    }
    if (!found) break;
    std::fill(cursor.begin(), cursor.end(), 0);
    // Iterative DFS along the level graph.
    for (int root = 0; root < nl; ++root) {
      if (match_l[root] >= 0) continue;
      std::vector<int> path{root};
      while (!path.empty()) {
        const int i = path.back();
        bool advanced = false;
        while (cursor[i] < adj[i].size()) {
          const int j = adj[i][cursor[i]++];
          const int k = match_r[j];
          if (k < 0) {
            // Augment along the path.
            int jj = j;
            for (auto p = path.rbegin(); p != path.rend(); ++p) {
              const int prev = match_l[*p];
              match_l[*p] = jj;
              match_r[jj] = *p;
              jj = prev;
            }
            ++matched;
            path.clear();
            advanced = true;
            break;
          }
          if (level[k] == level[i] + 1) {
            path.push_back(k);
            advanced = true;
            break;
          }
        }
        if (!advanced) {
          level[i] = -1;
          path.pop_back();
        }
      }
    }
  }
  return matched == nl;
}

std::vector<Point> big_points(const std::vector<Point>& pts, double t) {
  std::vector<Point> out;
  for (const Point& p : pts) {
    if (half_persistence(p) > t) out.push_back(p);
  }
  return out;
}

// Every point with half-persistence above t must be matched off the
// diagonal; by the Mendelsohn-Dulmage theorem it suffices to saturate each
// side's large points separately.
bool feasible(const std::vector<Point>& a, const std::vector<Point>& b, double t) {
  return saturates(big_points(a, t), b, t) && saturates(big_points(b, t), a, t);
}

double finite_bottleneck(std::vector<Point> a, std::vector<Point> b) {
  const auto by_death = [](const Point& x, const Point& y) {
    return std::tie(x.death, x.birth) < std::tie(y.death, y.birth);
  };
  std::sort(a.begin(), a.end(), by_death);
  std::sort(b.begin(), b.end(), by_death);

  std::vector<double> levels{0.0};
  for (const auto* side : {&a, &b}) {
    for (const Point& p : *side) levels.push_back(half_persistence(p));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::size_t lo_idx = 0;
  std::size_t hi_idx = levels.size() - 1;  // feasible: every point may go to the diagonal
  if (feasible(a, b, levels[0])) return levels[0];
  while (hi_idx - lo_idx > 1) {
    const std::size_t mid = (lo_idx + hi_idx) / 2;
    if (feasible(a, b, levels[mid])) {
      hi_idx = mid;
    } else {
      lo_idx = mid;
    }
  }
  const double lo = levels[lo_idx];
  const double hi = levels[hi_idx];

  // Inside (lo, hi) the set of large points is fixed, so feasibility can
  // only change at a pair distance involving a large point.
  std::vector<double> candidates;
  const auto collect = [&](const std::vector<Point>& from, const std::vector<Point>& to) {
    for (const Point& p : from) {
      if (half_persistence(p) < hi) continue;
      for_each_near(to, p, hi, [&](int, double dist) {
        if (dist > lo && dist < hi) candidates.push_back(dist);
      });
    }
  };
  collect(a, b);
  collect(b, a);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::size_t left = 0;
  std::size_t right = candidates.size();  // first feasible index, or size()
  while (left < right) {
    const std::size_t mid = (left + right) / 2;
    if (feasible(a, b, candidates[mid])) {
      right = mid;
    } else {
      left = mid + 1;
    }
  }
  return right < candidates.size() ? candidates[right] : hi;
}

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  return (m % 2 == 1) ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

}  // namespace

bool PersistenceFeature::infinite() const { return std::isinf(death); }

std::vector<PersistenceFeature> PersistenceDiagram::in_dim(int dim) const {
  std::vector<PersistenceFeature> out;
  for (const auto& f : features) {
    if (f.dim == dim) out.push_back(f);
  }
  return out;
}

std::vector<std::pair<double, double>> PersistenceDiagram::points(int dim) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& f : features) {
    if (f.dim == dim) out.emplace_back(f.birth, f.death);
  }
  return out;
}

double enclosing_radius(const Eigen::MatrixXd& points) {
  const Eigen::Index n = points.rows();
  if (n == 0) throw ParameterError("enclosing_radius: empty point set");
  double best = kInf;
  for (Eigen::Index i = 0; i < n; ++i) {
    double far = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) far = std::max(far, kernels::row_distance(points, i, j));
    best = std::min(best, far);
  }
  return best;
}

PersistenceDiagram rips_persistence(const Eigen::MatrixXd& points, const RipsOptions& options) {
  if (points.rows() < 1) throw ParameterError("rips_persistence: empty point set");
  if (options.max_dim < 0 || options.max_dim > 1) throw ParameterError("rips_persistence: max_dim must be 0 or 1");
  const double factor = options.scale == FiltrationScale::kRadius ? 0.5 : 1.0;
  double cutoff = kInf;  // in distance units
  if (options.max_radius) {
    if (!(*options.max_radius > 0.0)) throw ParameterError("rips_persistence: max_radius must be > 0");
    cutoff = *options.max_radius / factor;
  } else if (options.max_dim == 1) {
    cutoff = enclosing_radius(points);
  }
  PersistenceDiagram dgm;
  dgm.features = h0_features(kernels::minimum_spanning_tree(points), points.rows(), cutoff, factor);
  if (options.max_dim == 1) {
    auto h1 = h1_features(points, cutoff, factor);
    dgm.features.insert(dgm.features.end(), h1.begin(), h1.end());
  }
  return dgm;
}

BottleneckResult bottleneck(const DiagramPoints& a, const DiagramPoints& b) {
  std::vector<Point> fa;
  std::vector<Point> fb;
  std::vector<double> ia;
  std::vector<double> ib;
  for (const auto& [birth, death] : a) {
    if (death < birth) throw ParameterError("bottleneck: death < birth");
    if (std::isinf(death)) {
      ia.push_back(birth);
    } else {
      fa.push_back({birth, death});
    }
  }
  for (const auto& [birth, death] : b) {
    if (death < birth) throw ParameterError("bottleneck: death < birth");
    if (std::isinf(death)) {
      ib.push_back(birth);
    } else {
      fb.push_back({birth, death});
    }
  }
  BottleneckResult out;
  if (ia.size() != ib.size()) {
    out.distance = kInf;
    out.infinite_mismatch = true;
    return out;
  }
  // Essential classes match among themselves; sorted order is optimal on a line.
  std::sort(ia.begin(), ia.end());
  std::sort(ib.begin(), ib.end());
  double essential = 0.0;
  for (std::size_t i = 0; i < ia.size(); ++i) essential = std::max(essential, std::abs(ia[i] - ib[i]));
  out.distance = std::max(essential, finite_bottleneck(std::move(fa), std::move(fb)));
  return out;
}

BottleneckResult bottleneck(const PersistenceDiagram& a, const PersistenceDiagram& b, int dim) {
  return bottleneck(a.points(dim), b.points(dim));
}

std::vector<double> local_outlier_factors(const std::vector<double>& values, int k) {
  const auto m = static_cast<int>(values.size());
  if (k < 1 || k >= m) throw ParameterError("local_outlier_factors: need 1 <= k < count");
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return values[x] < values[y]; });
  std::vector<double> s(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) s[r] = values[order[r]];

  std::vector<int> nbr(static_cast<std::size_t>(m) * static_cast<std::size_t>(k));
  std::vector<double> kdist(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    int lo = r - 1;
    int hi = r + 1;
    for (int c = 0; c < k; ++c) {
      const bool take_left = lo >= 0 && (hi >= m || s[r] - s[lo] <= s[hi] - s[r]);
      const int pick = take_left ? lo-- : hi++;
      nbr[static_cast<std::size_t>(r) * k + c] = pick;
      kdist[r] = std::abs(s[r] - s[pick]);
    }
  }
  std::vector<double> lrd(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    double reach = 0.0;
    for (int c = 0; c < k; ++c) {
      const int o = nbr[static_cast<std::size_t>(r) * k + c];
      reach += std::max(kdist[o], std::abs(s[r] - s[o]));
    }
    lrd[r] = 1.0 / (reach / k + 1e-10);
  }
  std::vector<double> lof(static_cast<std::size_t>(m));
  for (int r = 0; r < m; ++r) {
    double acc = 0.0;
    for (int c = 0; c < k; ++c) acc += lrd[nbr[static_cast<std::size_t>(r) * k + c]];
    lof[order[r]] = (acc / k) / lrd[r];
  }
  return lof;
}

std::vector<std::size_t> persistence_outlier_filter(const std::vector<PersistenceFeature>& features,
                                                    const OutlierFilterOptions& options) {
  if (!(options.q > 0.0)) throw ParameterError("persistence_outlier_filter: q must be > 0");
  if (options.max_neighbors < 1) throw ParameterError("persistence_outlier_filter: max_neighbors must be >= 1");
  std::vector<std::size_t> selected;
  std::vector<std::size_t> finite;
  std::vector<double> delta;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (features[i].infinite()) {
      selected.push_back(i);
    } else {
      finite.push_back(i);
      delta.push_back(features[i].persistence());
    }
  }
  if (finite.size() < 2) return selected;
  const int k = std::min(options.max_neighbors, static_cast<int>(finite.size()) - 1);
  const std::vector<double> lof = local_outlier_factors(delta, k);
  const double med = median_of(lof);
  std::vector<double> dev(lof.size());
  for (std::size_t i = 0; i < lof.size(); ++i) dev[i] = std::abs(lof[i] - med);
  const double threshold = med + options.q * median_of(dev);
  for (std::size_t i = 0; i < lof.size(); ++i) {
    if (lof[i] > threshold) selected.push_back(finite[i]);
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

std::vector<int> topo_cluster(const Eigen::MatrixXd& points, const OutlierFilterOptions& options) {
  const Eigen::Index n = points.rows();
  if (n < 1) throw ParameterError("topo_cluster: empty point set");
  const std::vector<WeightedEdge> mst = kernels::minimum_spanning_tree(points);
  const std::vector<PersistenceFeature> h0 = h0_features(mst, n, kInf, 1.0);
  const std::vector<std::size_t> keep = persistence_outlier_filter(h0, options);

  // One cluster per selected feature: keep k clusters by withholding the
  // k - 1 largest merges (the MST is in filtration order).
  std::size_t cut = 0;
  for (std::size_t i : keep) cut += h0[i].infinite() ? 0 : 1;
  UnionFind uf(static_cast<std::size_t>(n));
  for (std::size_t e = 0; e + cut < mst.size(); ++e) {
    uf.unite(static_cast<std::size_t>(mst[e].u), static_cast<std::size_t>(mst[e].v));
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  std::unordered_map<std::size_t, int> id;
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::size_t root = uf.find(static_cast<std::size_t>(i));
    const auto [it, inserted] = id.emplace(root, static_cast<int>(id.size()));
    labels[static_cast<std::size_t>(i)] = it->second;
  }
  return labels;
}

std::vector<int> topo_cluster(const Eigen::MatrixXd& points, double q) {
  OutlierFilterOptions options;
  options.q = q;
  return topo_cluster(points, options);
}

}  // namespace privgraph
