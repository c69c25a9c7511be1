#pragma once

// Internal machinery shared by the map-homotopy and loop-homotopy searches:
// bitset-propagated successor enumeration and a compact visited store.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "hforge/metric.hpp"

namespace hforge::detail {

/// Fixed-width bitsets over the codomain, stored contiguously.
class BallTable {
 public:
  BallTable() = default;
  /// Row y is the set {z : d(y, z) <= radius}.
  BallTable(const FiniteMetricSpace& space, double radius);

  std::size_t words() const { return words_; }
  const std::uint64_t* row(PointId y) const { return bits_.data() + static_cast<std::size_t>(y) * words_; }
  bool full() const { return full_; }

 private:
  std::size_t words_ = 0;
  bool full_ = false;
  std::vector<std::uint64_t> bits_;
};

/**
 * Enumerates the neighbours of a map f: X -> Y in the graph whose vertices are
 * the s-Lipschitz maps and whose edges join maps at uniform distance <= r.
 *
 * Points of X are assigned in index order. Each point starts with the candidate
 * set ball(f(x), r); every assignment g(x) = y intersects the candidate sets of
 * the later points x' with ball(y, s d(x, x')). Values are tried in ascending
 * index order, so the enumeration order is lexicographic in the table.
 */
class NeighborEnumerator {
 public:
  NeighborEnumerator(const FiniteMetricSpace& domain, const FiniteMetricSpace& codomain, double s, double r);

  /// Calls `visit(span<const PointId>)` for every neighbour (f itself
  /// included). `visit` returns false to stop; the function then returns false.
  template <class Visit>
  bool for_each(std::span<const PointId> f, Visit&& visit);

  std::size_t domain_size() const { return n_; }

  /// Points whose image may never move (the endpoints of a based loop).
  void pin(std::size_t x) { pinned_[x] = 1; }

  /// Whether g lies within r of f pointwise (g assumed s-Lipschitz).
  bool adjacent(std::span<const PointId> f, std::span<const PointId> g) const {
    for (std::size_t x = 0; x < n_; ++x) {
      if (pinned_[x] && f[x] != g[x]) return false;
      if (!((move_.row(f[x])[g[x] / 64] >> (g[x] % 64)) & 1u)) return false;
    }
    return true;
  }

 private:
  template <class Visit>
  bool descend(std::size_t k, Visit& visit);

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  BallTable move_;
  std::vector<BallTable> pair_balls_;
  std::vector<std::int32_t> pair_class_;  // n*n, -1 when the constraint is vacuous
  std::vector<std::uint64_t> levels_;     // (n+1) * n * words
  std::vector<PointId> current_;
  std::vector<char> pinned_;
};

template <class Visit>
bool NeighborEnumerator::for_each(std::span<const PointId> f, Visit&& visit) {
  if (n_ == 0) {
    return visit(std::span<const PointId>{});
  }
  std::uint64_t* base = levels_.data();
  for (std::size_t x = 0; x < n_; ++x) {
    if (pinned_[x]) {
      std::fill(base + x * words_, base + (x + 1) * words_, 0);
      base[x * words_ + f[x] / 64] = std::uint64_t{1} << (f[x] % 64);
      continue;
    }
    const std::uint64_t* ball = move_.row(f[x]);
    std::copy(ball, ball + words_, base + x * words_);
  }
  return descend(0, visit);
}

template <class Visit>
bool NeighborEnumerator::descend(std::size_t k, Visit& visit) {
  const std::size_t stride = n_ * words_;
  std::uint64_t* level = levels_.data() + k * stride;
  std::uint64_t* next = level + stride;
  const std::uint64_t* mine = level + k * words_;
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = mine[w];
    while (bits) {
      const auto y = static_cast<PointId>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits)));
      bits &= bits - 1;
      current_[k] = y;
      if (k + 1 == n_) {
        if (!visit(std::span<const PointId>(current_))) return false;
        continue;
      }
      bool alive = true;
      for (std::size_t x = k + 1; x < n_ && alive; ++x) {
        const std::uint64_t* src = level + x * words_;
        std::uint64_t* dst = next + x * words_;
        const std::int32_t cls = pair_class_[k * n_ + x];
        if (cls < 0) {
          std::copy(src, src + words_, dst);
          continue;
        }
        const std::uint64_t* ball = pair_balls_[static_cast<std::size_t>(cls)].row(y);
        std::uint64_t any = 0;
        for (std::size_t v = 0; v < words_; ++v) {
          dst[v] = src[v] & ball[v];
          any |= dst[v];
        }
        alive = any != 0;
      }
      if (alive && !descend(k + 1, visit)) return false;
    }
  }
  return true;
}

/// Open-addressing set of fixed-width index tuples with one parent link each.
class TupleStore {
 public:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  explicit TupleStore(std::size_t width);

  /// Returns (id, inserted).
  std::pair<std::uint32_t, bool> insert(std::span<const PointId> tuple, std::uint32_t parent);
  std::optional<std::uint32_t> find(std::span<const PointId> tuple) const;
  std::vector<PointId> get(std::uint32_t id) const;
  std::uint32_t parent(std::uint32_t id) const { return parents_[id]; }
  std::size_t size() const { return parents_.size(); }

  /// The chain id, parent(id), ... up to a root.
  std::vector<std::vector<PointId>> trace(std::uint32_t id) const;

 private:
  bool equals(std::uint32_t id, std::span<const PointId> tuple) const;
  std::size_t slot_hash(std::span<const PointId> tuple) const;
  void grow();

  std::size_t width_;
  std::vector<std::uint16_t> data_;
  std::vector<std::uint32_t> parents_;
  std::vector<std::uint32_t> slots_;
};

}  // namespace hforge::detail
