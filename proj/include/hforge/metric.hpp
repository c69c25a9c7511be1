#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hforge/common.hpp"

namespace hforge {

class FiniteMetricSpace;
using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

enum class MetricErrorKind {
  NotSquare,
  LabelMismatch,
  NegativeDistance,
  Asymmetry,
  NonZeroDiagonal,
  ZeroDistanceDistinctPoints,
  TriangleViolation,
};

/// Raised by `validate_metric`. `i`, `j`, `k` name the witnesses; for a
/// triangle violation the pair (i, j) is longer than the detour through k.
class MetricError : public Error {
 public:
  MetricError(MetricErrorKind kind, std::size_t i, std::size_t j, std::size_t k, const std::string& what)
      : Error(what), kind_(kind), i_(i), j_(j), k_(k) {}

  MetricErrorKind kind() const { return kind_; }
  std::size_t i() const { return i_; }
  std::size_t j() const { return j_; }
  std::size_t k() const { return k_; }

 private:
  MetricErrorKind kind_;
  std::size_t i_, j_, k_;
};

/**
 * A finite set of labelled points with a validated distance matrix.
 *
 * Instances are immutable and always handed around as `SpacePtr`; the only way
 * to obtain one is through `validate_metric` (or a generator that calls it), so
 * every live object satisfies the metric axioms up to `eps()`.
 *
 * Point identity is the index into `labels()`; every deterministic tie-break in
 * the library uses ascending index order.
 */
class FiniteMetricSpace {
 public:
  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(PointId i) const { return labels_.at(i); }

  std::optional<PointId> find(const std::string& label) const;
  /// Throws UnknownPoint.
  PointId at(const std::string& label) const;

  double d(PointId i, PointId j) const { return dist_[static_cast<std::size_t>(i) * size() + j]; }
  std::span<const double> row(PointId i) const { return {dist_.data() + static_cast<std::size_t>(i) * size(), size()}; }
  std::vector<std::vector<double>> matrix() const;

  double eps() const { return eps_; }
  /// `a <= b` up to the space tolerance.
  bool leq(double a, double b) const { return a <= b + eps_; }

  double diameter() const { return diameter_; }
  /// Smallest distance between distinct points (0 for a one-point space).
  double min_separation() const { return min_separation_; }
  /// Sorted distinct values occurring in the matrix, merged within eps.
  std::vector<double> distinct_distances() const;

 private:
  friend SpacePtr validate_metric(std::vector<std::string>, const std::vector<std::vector<double>>&, double);
  FiniteMetricSpace() = default;

  std::vector<std::string> labels_;
  std::vector<double> dist_;
  std::unordered_map<std::string, PointId> index_;
  double eps_ = kDefaultEps;
  double diameter_ = 0.0;
  double min_separation_ = 0.0;
};

/// Checks every axiom and returns the space, or throws MetricError naming the
/// first violation found (pairs are scanned in index order).
SpacePtr validate_metric(std::vector<std::string> labels, const std::vector<std::vector<double>>& matrix,
                         double eps = kDefaultEps);
/// Same with generated labels "p0", "p1", ...
SpacePtr validate_metric(const std::vector<std::vector<double>>& matrix, double eps = kDefaultEps);

/// Euclidean distances between coordinate rows.
SpacePtr euclidean_space(std::vector<std::string> labels, const std::vector<std::vector<double>>& coords,
                         double eps = kDefaultEps);

/// Induced metric on `points` (kept in the given order).
SpacePtr subspace(const FiniteMetricSpace& parent, std::span<const PointId> points);

/// The integer interval [m] = {0, ..., m} with d(a, b) = |a - b|.
struct IntervalSpace {
  int m = 0;
  SpacePtr space() const;
};

/// X x Y with the l1 metric, materialised as an ordinary space whose point
/// (a, b) has index a * |Y| + b and label "(a,b)".
struct ProductSpace {
  SpacePtr left;
  SpacePtr right;
  SpacePtr space;

  PointId pair(PointId a, PointId b) const { return a * static_cast<PointId>(right->size()) + b; }
  std::pair<PointId, PointId> split(PointId p) const {
    const auto n = static_cast<PointId>(right->size());
    return {p / n, p % n};
  }
};

ProductSpace l1_product(SpacePtr left, SpacePtr right);

/// The set X^[m] of r-paths of a fixed length under the uniform metric.
struct PathSpace {
  SpacePtr base;
  int m = 0;
  double r = 0.0;

  bool contains(std::span<const PointId> path) const;
  /// max_i d(a_i, b_i); both paths must have length m.
  double distance(std::span<const PointId> a, std::span<const PointId> b) const;
};

/// Uniform (sup) distance between two equal-length point sequences.
double uniform_distance(const FiniteMetricSpace& space, std::span<const PointId> a, std::span<const PointId> b);

// Generators. All of them go through validate_metric.

/// n equally spaced points on a circle with the chordal metric.
SpacePtr gen_circle(int n, double radius);
/// {0, length/m, ..., length} with |a - b|.
SpacePtr gen_interval_grid(int m, double length);
/// k chordal n-gons glued at one basepoint, with the shortest-path metric of
/// the union (distances across circles pass through the basepoint).
SpacePtr gen_wedge_circles(int k, int n, double radius);
/// First k circles of the Hawaiian earring, circle c having radius 1/c and
/// centre (1/c, 0), each sampled at n points starting at the shared origin.
/// Planar Euclidean metric.
SpacePtr gen_hawaiian(int k, int n);

}  // namespace hforge
