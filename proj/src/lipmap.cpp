#include "hforge/lipmap.hpp"

#include <algorithm>

namespace hforge {

namespace {

void require_total(const LipMap& f) {
  if (!f.domain || !f.codomain) throw PartialMap("map without domain or codomain");
  if (f.table.size() != f.domain->size()) throw PartialMap("map table does not cover the domain");
  for (PointId y : f.table) {
    if (y >= f.codomain->size()) throw PartialMap("image outside the codomain");
  }
}

}  // namespace

LipschitzCheck is_lipschitz(const LipMap& f) { return is_lipschitz(f, f.s); }

LipschitzCheck is_lipschitz(const LipMap& f, double s) {
  require_total(f);
  const auto& X = *f.domain;
  const auto& Y = *f.codomain;
  for (PointId a = 0; a < X.size(); ++a) {
    for (PointId b = a + 1; b < X.size(); ++b) {
      if (!Y.leq(Y.d(f.table[a], f.table[b]), s * X.d(a, b))) return {false, std::pair{a, b}};
    }
  }
  return {};
}

double map_uniform_distance(const LipMap& f, const LipMap& g) {
  if (!f.same_spaces(g)) throw DomainMismatch("maps have different domain or codomain");
  require_total(f);
  require_total(g);
  double best = 0.0;
  for (PointId x = 0; x < f.table.size(); ++x) best = std::max(best, f.codomain->d(f.table[x], g.table[x]));
  return best;
}

LipMap compose(const LipMap& outer, const LipMap& inner) {
  if (inner.codomain != outer.domain) throw DomainMismatch("cannot compose: codomain of inner map is not the domain of outer map");
  require_total(outer);
  require_total(inner);
  LipMap out{inner.domain, outer.codomain, outer.s * inner.s, {}};
  out.table.reserve(inner.table.size());
  for (PointId y : inner.table) out.table.push_back(outer.table[y]);
  return out;
}

LipMap identity_map(const SpacePtr& space) {
  LipMap f{space, space, 1.0, std::vector<PointId>(space->size())};
  for (PointId i = 0; i < space->size(); ++i) f.table[i] = i;
  return f;
}

LipMap constant_map(const SpacePtr& domain, const SpacePtr& codomain, PointId value) {
  if (value >= codomain->size()) throw UnknownPoint("#" + std::to_string(value));
  return LipMap{domain, codomain, 1.0, std::vector<PointId>(domain->size(), value)};
}

LipMap inclusion_map(const SpacePtr& sub, const SpacePtr& parent) {
  LipMap f{sub, parent, 1.0, {}};
  f.table.reserve(sub->size());
  for (const auto& label : sub->labels()) f.table.push_back(parent->at(label));
  return f;
}

bool is_constant(const LipMap& f) {
  return std::adjacent_find(f.table.begin(), f.table.end(), std::not_equal_to<>()) == f.table.end();
}

std::size_t hash_table(std::span<const PointId> table) {
  std::uint64_t h = 1469598103934665603ull;
  for (PointId v : table) {
    h ^= v;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace hforge
