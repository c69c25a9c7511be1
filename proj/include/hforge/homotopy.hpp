#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hforge/lipmap.hpp"

namespace hforge {

/**
 * F : X x [m] -> Y stored frame by frame: frames[i] is F(-, i). An
 * (s, r)-homotopy when every frame is s-Lipschitz and every track F(x, -) is
 * r-Lipschitz on [m].
 */
struct HomotopyGrid {
  double s = 1.0;
  double r = 0.0;
  std::vector<LipMap> frames;

  std::size_t steps() const { return frames.empty() ? 0 : frames.size() - 1; }
  PointId at(PointId x, std::size_t i) const { return frames[i].table[x]; }
};

HomotopyGrid reversed(const HomotopyGrid& grid);
/// first followed by second; the last frame of `first` must equal the first
/// frame of `second` (throws EndpointMismatch).
HomotopyGrid concat(const HomotopyGrid& first, const HomotopyGrid& second);
/// Repeats the last frame until the grid has m steps.
HomotopyGrid pad_to(const HomotopyGrid& grid, std::size_t m);

enum class GridViolation {
  None,
  Empty,
  SpaceMismatch,  // frames over different spaces, or a table of the wrong size
  NotLipschitz,   // frame i, pair (x, x2)
  TrackTooLong,   // point x, frames i < j with d > r |i - j|
  StartMismatch,  // F(x, 0) != f(x)
  EndMismatch,    // F(x, m) != g(x)
  NotConstant,    // the last frame of a null-homotopy is not constant (x, x2 disagree)
};

const char* to_string(GridViolation v);

struct GridCheck {
  GridViolation violation = GridViolation::None;
  std::optional<PointId> x, x2;
  std::optional<std::size_t> i, j;

  bool ok() const { return violation == GridViolation::None; }
  explicit operator bool() const { return ok(); }
  std::string describe() const;
};

/// Both Lipschitz conditions, at the grid's own s and r. Tracks are checked for
/// every pair of frames, not only consecutive ones.
GridCheck verify_grid(const HomotopyGrid& grid);
/// verify_grid plus F(-, 0) = f and F(-, m) = g.
GridCheck verify_homotopy(const HomotopyGrid& grid, const LipMap& f, const LipMap& g);
/// verify_grid plus F(-, 0) = f and a constant last frame.
GridCheck verify_null_homotopy(const HomotopyGrid& grid, const LipMap& f);

enum class SearchVerdict { Found, Impossible, BudgetExhausted };
const char* to_string(SearchVerdict v);

struct SearchOptions {
  /// Maps stored by both search sides together.
  std::size_t max_states = 5'000'000;
};

struct SearchOutcome {
  SearchVerdict verdict = SearchVerdict::Impossible;
  std::optional<HomotopyGrid> grid;
  std::size_t states_visited = 0;
};

/// Breadth-first reachability from f to g in the graph of s-Lipschitz maps
/// X -> Y with edges between maps at uniform distance <= r. Both f and g must
/// be s-Lipschitz. A Found grid has been re-verified.
SearchOutcome homotopy_search(const LipMap& f, const LipMap& g, double s, double r, const SearchOptions& opts = {});
/// Same, with every constant map as a target. The grid ends at the constant
/// met first.
SearchOutcome null_homotopy_search(const LipMap& f, double s, double r, const SearchOptions& opts = {});

/// Calls `visit` with the table of every s-Lipschitz g at uniform distance
/// <= r from f (f included), lexicographically by table. Return false from
/// `visit` to stop early.
void enumerate_neighbors(const LipMap& f, double s, double r,
                         const std::function<bool(std::span<const PointId>)>& visit);
std::vector<LipMap> neighbors(const LipMap& f, double s, double r);

}  // namespace hforge
