#pragma once

// Brute-force reference computations. Everything here works on raw distance
// matrices and plain loops so that it shares no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Matrix = std::vector<std::vector<double>>;
using Table = std::vector<std::uint32_t>;

inline bool le(double a, double b) { return a <= b + 1e-9; }

/// All n^n self-maps of an n-point set, in lexicographic order.
inline std::vector<Table> all_maps(std::size_t n, std::size_t k) {
  std::vector<Table> out;
  Table t(n, 0);
  while (true) {
    out.push_back(t);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++t[i] < k) break;
      t[i] = 0;
      if (i == 0) return out;
    }
    if (n == 0) return out;
  }
}

inline bool lipschitz(const Matrix& dx, const Matrix& dy, const Table& f, double s) {
  for (std::size_t a = 0; a < f.size(); ++a)
    for (std::size_t b = 0; b < f.size(); ++b)
      if (!le(dy[f[a]][f[b]], s * dx[a][b])) return false;
  return true;
}

inline double sup_dist(const Matrix& dy, const Table& f, const Table& g) {
  double m = 0;
  for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, dy[f[i]][g[i]]);
  return m;
}

/// Filter of all maps: s-Lipschitz and within r of f.
inline std::vector<Table> neighbours(const Matrix& dx, const Matrix& dy, const Table& f, double s, double r) {
  std::vector<Table> out;
  for (auto& g : all_maps(dx.size(), dy.size()))
    if (lipschitz(dx, dy, g, s) && le(sup_dist(dy, f, g), r)) out.push_back(g);
  return out;
}

/// Plain BFS on the explicit graph of all 1-Lipschitz self-maps: is the
/// identity connected to some constant map?
inline bool contractible(const Matrix& d, double r) {
  const std::size_t n = d.size();
  std::vector<Table> verts;
  for (auto& g : all_maps(n, n))
    if (lipschitz(d, d, g, 1.0)) verts.push_back(g);
  std::map<Table, int> seen;
  Table id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<std::uint32_t>(i);
  std::queue<Table> q;
  q.push(id);
  seen[id] = 1;
  while (!q.empty()) {
    Table u = q.front();
    q.pop();
    if (std::all_of(u.begin(), u.end(), [&](auto v) { return v == u[0]; })) return true;
    for (auto& v : verts)
      if (!seen.count(v) && le(sup_dist(d, u, v), r)) {
        seen[v] = 1;
        q.push(v);
      }
  }
  return false;
}

/// Floyd-Warshall hop counts in the r-graph (-1 when unreachable).
inline std::vector<std::vector<int>> hops(const Matrix& d, double r) {
  const std::size_t n = d.size();
  const int inf = 1 << 28;
  std::vector<std::vector<int>> h(n, std::vector<int>(n, inf));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i == j) h[i][j] = 0;
      else if (le(d[i][j], r)) h[i][j] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) h[i][j] = std::min(h[i][j], h[i][k] + h[k][j]);
  for (auto& row : h)
    for (auto& v : row)
      if (v >= inf) v = -1;
  return h;
}

inline bool is_metric(const Matrix& d) {
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (d[i][j] > d[i][k] + d[k][j] + 1e-9) return false;
  return true;
}

/// Every metric on n <= 4 points with off-diagonal values in `values`, one
/// representative per orbit under point permutations.
inline std::vector<Matrix> small_metrics(std::size_t n, const std::vector<double>& values) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  std::vector<Matrix> out;
  std::set<std::vector<double>> canon;
  std::vector<std::size_t> pick(pairs.size(), 0);
  while (true) {
    Matrix d(n, std::vector<double>(n, 0.0));
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      d[pairs[p].first][pairs[p].second] = values[pick[p]];
      d[pairs[p].second][pairs[p].first] = values[pick[p]];
    }
    if (is_metric(d)) {
      std::vector<std::size_t> perm(n);
      for (std::size_t i = 0; i < n; ++i) perm[i] = i;
      std::vector<double> best;
      do {
        std::vector<double> key;
        for (auto& pr : pairs) key.push_back(d[perm[pr.first]][perm[pr.second]]);
        if (best.empty() || key < best) best = key;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (canon.insert(best).second) out.push_back(d);
    }
    std::size_t p = 0;
    for (; p < pick.size(); ++p) {
      if (++pick[p] < values.size()) break;
      pick[p] = 0;
    }
    if (p == pick.size()) break;
  }
  return out;
}

/// A random metric on n points with values in `values` (rejection sampling).
inline Matrix random_metric(std::mt19937& rng, std::size_t n, const std::vector<double>& values) {
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  while (true) {
    Matrix d(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = values[pick(rng)];
    if (is_metric(d)) return d;
  }
}

/// Tree metric: random parent for each point, random edge weights, path sums.
inline Matrix random_tree(std::mt19937& rng, std::size_t n, std::vector<double> weights) {
  std::vector<std::size_t> parent(n, 0);
  std::vector<double> w(n, 0.0);
  std::uniform_int_distribution<std::size_t> pw(0, weights.size() - 1);
  for (std::size_t i = 1; i < n; ++i) {
    parent[i] = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
    w[i] = weights[pw(rng)];
  }
  Matrix d(n, std::vector<double>(n, 0.0));
  auto depth_chain = [&](std::size_t v) {
    std::vector<std::size_t> c{v};
    while (v != 0) c.push_back(v = parent[v]);
    return c;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto ca = depth_chain(a), cb = depth_chain(b);
      std::set<std::size_t> sa(ca.begin(), ca.end());
      std::size_t lca = 0;
      for (auto v : cb)
        if (sa.count(v)) {
          lca = v;
          break;
        }
      double s = 0;
      for (auto v : ca) {
        if (v == lca) break;
        s += w[v];
      }
      for (auto v : cb) {
        if (v == lca) break;
        s += w[v];
      }
      d[a][b] = s;
    }
  return d;
}

/// A ⊆ X (given by indices) deforms inside X to a point: BFS over all
/// 1-Lipschitz maps A -> X from the inclusion towards any constant.
inline bool categorical(const Matrix& d, const std::vector<std::uint32_t>& subset, double r) {
  const std::size_t k = subset.size();
  Matrix da(k, std::vector<double>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) da[i][j] = d[subset[i]][subset[j]];
  std::vector<Table> verts;
  for (auto& g : all_maps(k, d.size()))
    if (lipschitz(da, d, g, 1.0)) verts.push_back(g);
  std::set<Table> seen{subset};
  std::queue<Table> q;
  q.push(subset);
  while (!q.empty()) {
    Table u = q.front();
    q.pop();
    if (std::all_of(u.begin(), u.end(), [&](auto v) { return v == u[0]; })) return true;
    for (auto& v : verts)
      if (!seen.count(v) && le(sup_dist(d, u, v), r)) {
        seen.insert(v);
        q.push(v);
      }
  }
  return false;
}

/// Least number of categorical subsets covering X, by trying every family of
/// masks in increasing size. Small n only.
inline int cat(const Matrix& d, double r) {
  const std::size_t n = d.size();
  const std::uint32_t full = (1u << n) - 1;
  std::vector<std::uint32_t> good;
  for (std::uint32_t m = 1; m <= full; ++m) {
    std::vector<std::uint32_t> sub;
    for (std::uint32_t i = 0; i < n; ++i)
      if (m >> i & 1) sub.push_back(i);
    if (categorical(d, sub, r)) good.push_back(m);
  }
  // BFS over unions: layer k holds every union of k good sets
  std::set<std::uint32_t> layer{0};
  for (int k = 1; k <= static_cast<int>(n); ++k) {
    std::set<std::uint32_t> next;
    for (auto u : layer)
      for (auto g : good) next.insert(u | g);
    if (next.count(full)) return k;
    layer = std::move(next);
  }
  return -1;
}

/// Independent planner check on raw data: endpoints, r-steps, equal lengths,
/// and sup_i d(P(a,b)_i, P(c,e)_i) <= d(a,c) + d(b,e) over all pairs of pairs.
inline bool planner_ok(const Matrix& d, const std::map<std::pair<int, int>, std::vector<int>>& paths, double r) {
  std::size_t len = paths.empty() ? 0 : paths.begin()->second.size();
  for (auto& [ab, p] : paths) {
    if (p.size() != len || p.empty() || p.front() != ab.first || p.back() != ab.second) return false;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (!le(d[p[i]][p[i + 1]], r)) return false;
  }
  for (auto& [ab, p] : paths)
    for (auto& [ce, q] : paths)
      for (std::size_t i = 0; i < len; ++i)
        if (!le(d[p[i]][q[i]], d[ab.first][ce.first] + d[ab.second][ce.second])) return false;
  return true;
}

/// Rows are r-loops at c, columns r-paths, last row constant.
inline bool null_grid_ok(const Matrix& d, const std::vector<std::vector<int>>& rows, int c, double r) {
  if (rows.empty()) return false;
  const std::size_t w = rows[0].size();
  for (auto& row : rows) {
    if (row.size() != w || row.front() != c || row.back() != c) return false;
    for (std::size_t j = 0; j + 1 < w; ++j)
      if (!le(d[row[j]][row[j + 1]], r)) return false;
  }
  for (std::size_t i = 0; i + 1 < rows.size(); ++i)
    for (std::size_t j = 0; j < w; ++j)
      if (!le(d[rows[i][j]][rows[i + 1][j]], r)) return false;
  for (int v : rows.back())
    if (v != c) return false;
  return true;
}

/// A (1, r)-homotopy from the identity to a constant, checked directly:
/// every frame 1-Lipschitz, consecutive frames within r pointwise.
inline bool contraction_ok(const Matrix& d, const std::vector<Table>& frames, double r) {
  if (frames.empty()) return false;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (frames.front()[i] != i || frames.back()[i] != frames.back()[0]) return false;
  for (auto& f : frames)
    if (!lipschitz(d, d, f, 1.0)) return false;
  for (std::size_t k = 0; k + 1 < frames.size(); ++k)
    if (!le(sup_dist(d, frames[k], frames[k + 1]), r)) return false;
  return true;
}

}  // namespace oracle
