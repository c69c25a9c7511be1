#include "hforge/paths.hpp"

#include <algorithm>
#include <deque>

namespace hforge {

PathCheck is_r_path(const FiniteMetricSpace& space, std::span<const PointId> points, double r) {
  for (PointId p : points) {
    if (p >= space.size()) throw UnknownPoint("#" + std::to_string(p));
  }
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!space.leq(space.d(points[i], points[i + 1]), r)) return {false, i};
  }
  return {};
}

DiscretePath concat(const DiscretePath& first, const DiscretePath& second) {
  if (first.points.empty() || second.points.empty()) throw EndpointMismatch("cannot concatenate an empty path");
  if (first.back() != second.front()) throw EndpointMismatch("first path does not end where the second starts");
  if (first.r != second.r) throw EndpointMismatch("paths at different scales");
  DiscretePath out{first.r, first.points};
  out.points.insert(out.points.end(), second.points.begin() + 1, second.points.end());
  return out;
}

DiscretePath reverse(const DiscretePath& path) {
  DiscretePath out = path;
  std::reverse(out.points.begin(), out.points.end());
  return out;
}

DiscretePath pad_to(const DiscretePath& path, std::size_t m) {
  DiscretePath out = path;
  while (out.length() < m) out.points.push_back(out.back());
  return out;
}

std::vector<std::vector<PointId>> r_connected_components(const FiniteMetricSpace& space, double r) {
  const std::size_t n = space.size();
  std::vector<int> comp(n, -1);
  std::vector<std::vector<PointId>> out;
  for (PointId s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::deque<PointId> queue{s};
    comp[s] = id;
    while (!queue.empty()) {
      const PointId u = queue.front();
      queue.pop_front();
      out.back().push_back(u);
      for (PointId v = 0; v < n; ++v) {
        if (comp[v] < 0 && space.leq(space.d(u, v), r)) {
          comp[v] = id;
          queue.push_back(v);
        }
      }
    }
    std::sort(out.back().begin(), out.back().end());
  }
  return out;
}

bool is_r_connected(const FiniteMetricSpace& space, double r) {
  return space.size() <= 1 || r_connected_components(space, r).size() == 1;
}

std::optional<DiscretePath> shortest_r_path(const FiniteMetricSpace& space, double r, PointId x, PointId y) {
  const std::size_t n = space.size();
  if (x >= n) throw UnknownPoint("#" + std::to_string(x));
  if (y >= n) throw UnknownPoint("#" + std::to_string(y));
  std::vector<long> parent(n, -2);
  parent[x] = -1;
  std::deque<PointId> queue{x};
  while (!queue.empty() && parent[y] == -2) {
    const PointId u = queue.front();
    queue.pop_front();
    for (PointId v = 0; v < n; ++v) {
      if (parent[v] == -2 && space.leq(space.d(u, v), r)) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  if (parent[y] == -2) return std::nullopt;
  DiscretePath path{r, {}};
  for (long v = y; v != -1; v = parent[v]) path.points.push_back(static_cast<PointId>(v));
  std::reverse(path.points.begin(), path.points.end());
  return path;
}

std::vector<std::vector<int>> hop_distances(const FiniteMetricSpace& space, double r) {
  const std::size_t n = space.size();
  std::vector<std::vector<int>> hops(n, std::vector<int>(n, -1));
  for (PointId s = 0; s < n; ++s) {
    auto& h = hops[s];
    h[s] = 0;
    std::deque<PointId> queue{s};
    while (!queue.empty()) {
      const PointId u = queue.front();
      queue.pop_front();
      for (PointId v = 0; v < n; ++v) {
        if (h[v] < 0 && space.leq(space.d(u, v), r)) {
          h[v] = h[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  return hops;
}

}  // namespace hforge
