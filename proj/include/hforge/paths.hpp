#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hforge/metric.hpp"

namespace hforge {

/// An r-path gamma: [m] -> X stored as point indices.
struct DiscretePath {
  double r = 0.0;
  std::vector<PointId> points;

  std::size_t length() const { return points.empty() ? 0 : points.size() - 1; }
  PointId front() const { return points.front(); }
  PointId back() const { return points.back(); }
  bool operator==(const DiscretePath&) const = default;
};

class EndpointMismatch : public Error {
 public:
  using Error::Error;
};

struct PathCheck {
  bool ok = true;
  /// Index i of the first step (i, i+1) longer than r.
  std::optional<std::size_t> violation;
  explicit operator bool() const { return ok; }
};

/// Throws UnknownPoint for indices outside the space.
PathCheck is_r_path(const FiniteMetricSpace& space, std::span<const PointId> points, double r);
inline PathCheck is_r_path(const FiniteMetricSpace& space, const DiscretePath& path) {
  return is_r_path(space, path.points, path.r);
}

DiscretePath concat(const DiscretePath& first, const DiscretePath& second);
DiscretePath reverse(const DiscretePath& path);
/// Repeats the terminal point until the path has length m (no-op if longer).
DiscretePath pad_to(const DiscretePath& path, std::size_t m);

/// Connected components of the graph joining points at distance <= r. Each
/// component is sorted; components are ordered by their smallest index.
std::vector<std::vector<PointId>> r_connected_components(const FiniteMetricSpace& space, double r);
bool is_r_connected(const FiniteMetricSpace& space, double r);

/// Hop-count BFS with neighbours scanned in ascending index order; the first
/// parent to discover a point keeps it. nullopt means x and y lie in
/// different r-components.
std::optional<DiscretePath> shortest_r_path(const FiniteMetricSpace& space, double r, PointId x, PointId y);

/// All-pairs hop distances in the r-graph; -1 for unreachable pairs.
std::vector<std::vector<int>> hop_distances(const FiniteMetricSpace& space, double r);

}  // namespace hforge
