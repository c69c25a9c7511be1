#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hforge/metric.hpp"

namespace hforge {

/// Table of a map between finite spaces that is not defined everywhere (or
/// points outside its codomain).
class PartialMap : public Error {
 public:
  using Error::Error;
};

/// A map X -> Y stored densely: `table[x]` is the image of point x.
struct LipMap {
  SpacePtr domain;
  SpacePtr codomain;
  double s = 1.0;
  std::vector<PointId> table;

  PointId operator()(PointId x) const { return table[x]; }
  bool same_spaces(const LipMap& other) const { return domain == other.domain && codomain == other.codomain; }
  bool operator==(const LipMap& other) const { return same_spaces(other) && table == other.table; }
};

struct LipschitzCheck {
  bool ok = true;
  std::optional<std::pair<PointId, PointId>> violation;
  explicit operator bool() const { return ok; }
};

/// Checks d(f(x), f(x')) <= s d(x, x') for every pair, using `f.s`.
LipschitzCheck is_lipschitz(const LipMap& f);
LipschitzCheck is_lipschitz(const LipMap& f, double s);

/// max_x d(f(x), g(x)).
double map_uniform_distance(const LipMap& f, const LipMap& g);

/// outer o inner, with Lipschitz constant outer.s * inner.s.
LipMap compose(const LipMap& outer, const LipMap& inner);

LipMap identity_map(const SpacePtr& space);
LipMap constant_map(const SpacePtr& domain, const SpacePtr& codomain, PointId value);
/// Inclusion of `sub` into `parent`, matched by label.
LipMap inclusion_map(const SpacePtr& sub, const SpacePtr& parent);
/// Whether every point goes to the same image (true for an empty domain).
bool is_constant(const LipMap& f);

/// FNV-1a over the index table; consistent with table equality.
std::size_t hash_table(std::span<const PointId> table);

}  // namespace hforge
