#include "hforge/detail/map_graph.hpp"

#include <algorithm>
#include <stdexcept>

#include "hforge/lipmap.hpp"

namespace hforge::detail {

BallTable::BallTable(const FiniteMetricSpace& space, double radius) : words_((space.size() + 63) / 64) {
  const std::size_t n = space.size();
  bits_.assign(n * words_, 0);
  full_ = space.leq(space.diameter(), radius);
  for (PointId y = 0; y < n; ++y) {
    std::uint64_t* row = bits_.data() + y * words_;
    for (PointId z = 0; z < n; ++z) {
      if (space.leq(space.d(y, z), radius)) row[z / 64] |= std::uint64_t{1} << (z % 64);
    }
  }
}

NeighborEnumerator::NeighborEnumerator(const FiniteMetricSpace& domain, const FiniteMetricSpace& codomain, double s,
                                       double r)
    : n_(domain.size()), words_((codomain.size() + 63) / 64), move_(codomain, r) {
  pair_class_.assign(n_ * n_, -1);
  std::vector<double> thresholds;
  for (PointId a = 0; a < n_; ++a) {
    for (PointId b = 0; b < n_; ++b) {
      if (a == b) continue;
      const double t = s * domain.d(a, b);
      if (codomain.leq(codomain.diameter(), t)) continue;
      auto it = std::find_if(thresholds.begin(), thresholds.end(), [&](double u) { return u == t; });
      std::size_t cls;
      if (it == thresholds.end()) {
        cls = thresholds.size();
        thresholds.push_back(t);
        pair_balls_.emplace_back(codomain, t);
      } else {
        cls = static_cast<std::size_t>(it - thresholds.begin());
      }
      pair_class_[a * n_ + b] = static_cast<std::int32_t>(cls);
    }
  }
  levels_.assign((n_ + 1) * n_ * std::max<std::size_t>(words_, 1), 0);
  current_.assign(n_, 0);
  pinned_.assign(n_, 0);
}

TupleStore::TupleStore(std::size_t width) : width_(width) { slots_.assign(1024, kNone); }

std::size_t TupleStore::slot_hash(std::span<const PointId> tuple) const {
  std::uint64_t h = hash_table(tuple);
  h ^= h >> 29;
  h *= 0xbf58476d1ce4e5b9ull;
  h ^= h >> 32;
  return static_cast<std::size_t>(h);
}

bool TupleStore::equals(std::uint32_t id, std::span<const PointId> tuple) const {
  const std::uint16_t* row = data_.data() + static_cast<std::size_t>(id) * width_;
  for (std::size_t i = 0; i < width_; ++i) {
    if (row[i] != tuple[i]) return false;
  }
  return true;
}

void TupleStore::grow() {
  std::vector<std::uint32_t> fresh(slots_.size() * 2, kNone);
  const std::size_t mask = fresh.size() - 1;
  std::vector<PointId> buf(width_);
  for (std::uint32_t id = 0; id < parents_.size(); ++id) {
    const std::uint16_t* row = data_.data() + static_cast<std::size_t>(id) * width_;
    std::copy(row, row + width_, buf.begin());
    std::size_t pos = slot_hash(buf) & mask;
    while (fresh[pos] != kNone) pos = (pos + 1) & mask;
    fresh[pos] = id;
  }
  slots_.swap(fresh);
}

std::pair<std::uint32_t, bool> TupleStore::insert(std::span<const PointId> tuple, std::uint32_t parent) {
  if ((parents_.size() + 1) * 2 > slots_.size()) grow();
  const std::size_t mask = slots_.size() - 1;
  std::size_t pos = slot_hash(tuple) & mask;
  while (slots_[pos] != kNone) {
    if (equals(slots_[pos], tuple)) return {slots_[pos], false};
    pos = (pos + 1) & mask;
  }
  if (parents_.size() >= kNone) throw std::length_error("visited store overflow");
  const auto id = static_cast<std::uint32_t>(parents_.size());
  for (PointId v : tuple) {
    if (v > 0xffffu) throw std::length_error("codomain too large for the visited store");
    data_.push_back(static_cast<std::uint16_t>(v));
  }
  parents_.push_back(parent);
  slots_[pos] = id;
  return {id, true};
}

std::optional<std::uint32_t> TupleStore::find(std::span<const PointId> tuple) const {
  const std::size_t mask = slots_.size() - 1;
  std::size_t pos = slot_hash(tuple) & mask;
  while (slots_[pos] != kNone) {
    if (equals(slots_[pos], tuple)) return slots_[pos];
    pos = (pos + 1) & mask;
  }
  return std::nullopt;
}

std::vector<PointId> TupleStore::get(std::uint32_t id) const {
  const std::uint16_t* row = data_.data() + static_cast<std::size_t>(id) * width_;
  return std::vector<PointId>(row, row + width_);
}

std::vector<std::vector<PointId>> TupleStore::trace(std::uint32_t id) const {
  std::vector<std::vector<PointId>> chain;
  for (std::uint32_t cur = id; cur != kNone; cur = parents_[cur]) chain.push_back(get(cur));
  return chain;
}

}  // namespace hforge::detail
