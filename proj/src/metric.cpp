#include "hforge/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace hforge {

namespace {

std::string fmt_err(const char* what, std::size_t i, std::size_t j) {
  std::ostringstream os;
  os << what << " at (" << i << ", " << j << ")";
  return os.str();
}

std::vector<std::string> numbered(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

}  // namespace

std::optional<PointId> FiniteMetricSpace::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

PointId FiniteMetricSpace::at(const std::string& label) const {
  auto id = find(label);
  if (!id) throw UnknownPoint(label);
  return *id;
}

std::vector<std::vector<double>> FiniteMetricSpace::matrix() const {
  std::vector<std::vector<double>> out(size());
  for (PointId i = 0; i < size(); ++i) {
    auto r = row(i);
    out[i].assign(r.begin(), r.end());
  }
  return out;
}

std::vector<double> FiniteMetricSpace::distinct_distances() const {
  std::vector<double> all(dist_);
  std::sort(all.begin(), all.end());
  std::vector<double> out;
  for (double v : all) {
    if (out.empty() || v > out.back() + eps_) out.push_back(v);
  }
  return out;
}

SpacePtr validate_metric(std::vector<std::string> labels, const std::vector<std::vector<double>>& matrix, double eps) {
  const std::size_t n = matrix.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i].size() != n) throw MetricError(MetricErrorKind::NotSquare, i, 0, 0, "distance matrix is not square");
  }
  if (labels.size() != n) {
    throw MetricError(MetricErrorKind::LabelMismatch, labels.size(), n, 0, "label count does not match matrix size");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(matrix[i][j] >= 0.0) || !std::isfinite(matrix[i][j])) {
        throw MetricError(MetricErrorKind::NegativeDistance, i, j, 0, fmt_err("negative or non-finite distance", i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(matrix[i][j] - matrix[j][i]) > eps) {
        throw MetricError(MetricErrorKind::Asymmetry, i, j, 0, fmt_err("asymmetric distance", i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i][i] > eps) throw MetricError(MetricErrorKind::NonZeroDiagonal, i, i, 0, fmt_err("non-zero self distance", i, i));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix[i][j] <= eps) {
        throw MetricError(MetricErrorKind::ZeroDistanceDistinctPoints, i, j, 0,
                          fmt_err("distinct points at distance zero", i, j));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (matrix[i][j] > matrix[i][k] + matrix[k][j] + eps) {
          std::ostringstream os;
          os << "triangle inequality fails: d(" << i << "," << j << ") > d(" << i << "," << k << ") + d(" << k << ","
             << j << ")";
          throw MetricError(MetricErrorKind::TriangleViolation, i, j, k, os.str());
        }
      }
    }
  }

  auto space = std::shared_ptr<FiniteMetricSpace>(new FiniteMetricSpace());
  space->eps_ = eps;
  space->dist_.resize(n * n);
  double diam = 0.0;
  double sep = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      // Store the symmetrised value so d(i,j) == d(j,i) bit for bit.
      const double v = i == j ? 0.0 : (i < j ? matrix[i][j] : matrix[j][i]);
      space->dist_[i * n + j] = v;
      diam = std::max(diam, v);
      if (i != j && (sep == 0.0 || v < sep)) sep = v;
    }
  }
  space->diameter_ = diam;
  space->min_separation_ = sep;
  for (std::size_t i = 0; i < n; ++i) {
    if (!space->index_.emplace(labels[i], static_cast<PointId>(i)).second) {
      throw MetricError(MetricErrorKind::LabelMismatch, i, space->index_.at(labels[i]), 0, "duplicate label " + labels[i]);
    }
  }
  space->labels_ = std::move(labels);
  return space;
}

SpacePtr validate_metric(const std::vector<std::vector<double>>& matrix, double eps) {
  return validate_metric(numbered("p", matrix.size()), matrix, eps);
}

SpacePtr euclidean_space(std::vector<std::string> labels, const std::vector<std::vector<double>>& coords, double eps) {
  const std::size_t n = coords.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (coords[i].size() != coords[j].size()) throw Error("coordinate rows have different dimensions");
      double s = 0.0;
      for (std::size_t c = 0; c < coords[i].size(); ++c) {
        const double t = coords[i][c] - coords[j][c];
        s += t * t;
      }
      m[i][j] = m[j][i] = std::sqrt(s);
    }
  }
  return validate_metric(std::move(labels), m, eps);
}

SpacePtr subspace(const FiniteMetricSpace& parent, std::span<const PointId> points) {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> m(points.size(), std::vector<double>(points.size()));
  for (std::size_t a = 0; a < points.size(); ++a) {
    if (points[a] >= parent.size()) throw UnknownPoint("#" + std::to_string(points[a]));
    labels.push_back(parent.label(points[a]));
    for (std::size_t b = 0; b < points.size(); ++b) m[a][b] = parent.d(points[a], points[b]);
  }
  return validate_metric(std::move(labels), m, parent.eps());
}

SpacePtr IntervalSpace::space() const {
  if (m < 0) throw Error("interval length must be non-negative");
  const auto n = static_cast<std::size_t>(m) + 1;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) d[a][b] = std::abs(static_cast<double>(a) - static_cast<double>(b));
  return validate_metric(numbered("", n), d);
}

ProductSpace l1_product(SpacePtr left, SpacePtr right) {
  const std::size_t nl = left->size();
  const std::size_t nr = right->size();
  const std::size_t n = nl * nr;
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t a = 0; a < nl; ++a)
    for (std::size_t b = 0; b < nr; ++b) labels.push_back("(" + left->labels()[a] + "," + right->labels()[b] + ")");
  std::vector<std::vector<double>> m(n, std::vector<double>(n));
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      m[p][q] = left->d(static_cast<PointId>(p / nr), static_cast<PointId>(q / nr)) +
                right->d(static_cast<PointId>(p % nr), static_cast<PointId>(q % nr));
    }
  }
  ProductSpace out;
  out.space = validate_metric(std::move(labels), m, std::max(left->eps(), right->eps()));
  out.left = std::move(left);
  out.right = std::move(right);
  return out;
}

double uniform_distance(const FiniteMetricSpace& space, std::span<const PointId> a, std::span<const PointId> b) {
  if (a.size() != b.size()) throw DomainMismatch("paths of different lengths");
  double best = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) best = std::max(best, space.d(a[i], b[i]));
  return best;
}

bool PathSpace::contains(std::span<const PointId> path) const {
  if (path.size() != static_cast<std::size_t>(m) + 1) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] >= base->size() || path[i + 1] >= base->size()) return false;
    if (!base->leq(base->d(path[i], path[i + 1]), r)) return false;
  }
  return true;
}

double PathSpace::distance(std::span<const PointId> a, std::span<const PointId> b) const {
  if (a.size() != static_cast<std::size_t>(m) + 1 || b.size() != a.size()) throw DomainMismatch("path length differs from m");
  return uniform_distance(*base, a, b);
}

SpacePtr gen_circle(int n, double radius) {
  if (n < 3) throw Error("gen_circle needs n >= 3");
  if (!(radius > 0.0)) throw Error("gen_circle needs radius > 0");
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int k = std::abs(i - j);
      k = std::min(k, n - k);
      m[i][j] = 2.0 * radius * std::sin(std::numbers::pi * k / n);
    }
  }
  return validate_metric(numbered("p", n), m);
}

SpacePtr gen_interval_grid(int m, double length) {
  if (m < 1) throw Error("gen_interval_grid needs m >= 1");
  if (!(length > 0.0)) throw Error("gen_interval_grid needs length > 0");
  const auto n = static_cast<std::size_t>(m) + 1;
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double steps = std::abs(static_cast<double>(a) - static_cast<double>(b));
      d[a][b] = length * steps / m;
    }
  }
  return validate_metric(numbered("t", n), d);
}

SpacePtr gen_wedge_circles(int k, int n, double radius) {
  if (k < 1) throw Error("gen_wedge_circles needs k >= 1");
  if (n < 3) throw Error("gen_wedge_circles needs n >= 3");
  const std::size_t total = 1 + static_cast<std::size_t>(k) * (n - 1);
  std::vector<std::string> labels{"b"};
  for (int c = 0; c < k; ++c)
    for (int j = 1; j < n; ++j) labels.push_back("c" + std::to_string(c) + "_" + std::to_string(j));
  auto idx = [&](int c, int j) -> std::size_t { return j == 0 ? 0 : 1 + static_cast<std::size_t>(c) * (n - 1) + (j - 1); };

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(total, std::vector<double>(total, inf));
  for (std::size_t i = 0; i < total; ++i) d[i][i] = 0.0;
  for (int c = 0; c < k; ++c) {
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        int steps = std::abs(a - b);
        steps = std::min(steps, n - steps);
        auto& cell = d[idx(c, a)][idx(c, b)];
        cell = std::min(cell, 2.0 * radius * std::sin(std::numbers::pi * steps / n));
      }
    }
  }
  for (std::size_t via = 0; via < total; ++via)
    for (std::size_t i = 0; i < total; ++i)
      for (std::size_t j = 0; j < total; ++j) d[i][j] = std::min(d[i][j], d[i][via] + d[via][j]);
  return validate_metric(std::move(labels), d);
}

SpacePtr gen_hawaiian(int k, int n) {
  if (k < 1) throw Error("gen_hawaiian needs k >= 1");
  if (n < 3) throw Error("gen_hawaiian needs n >= 3");
  std::vector<std::string> labels{"o"};
  std::vector<std::vector<double>> coords{{0.0, 0.0}};
  for (int c = 1; c <= k; ++c) {
    const double rad = 1.0 / c;
    for (int j = 1; j < n; ++j) {
      const double theta = std::numbers::pi + 2.0 * std::numbers::pi * j / n;
      labels.push_back("h" + std::to_string(c) + "_" + std::to_string(j));
      coords.push_back({rad + rad * std::cos(theta), rad * std::sin(theta)});
    }
  }
  return euclidean_space(std::move(labels), coords);
}

}  // namespace hforge
