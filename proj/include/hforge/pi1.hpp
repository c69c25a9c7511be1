#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hforge/contract.hpp"

namespace hforge {

/// An r-path starting and ending at the basepoint.
bool is_r_loop(const FiniteMetricSpace& space, const DiscretePath& loop, PointId basepoint);

/**
 * Rows 0..M of equal-length r-loops at the basepoint, each column an r-path.
 * rows[0] is the loop being contracted, rows[M] the constant loop.
 */
struct NullHomotopyGrid {
  SpacePtr space;
  double r = 0.0;
  PointId basepoint = 0;
  std::vector<std::vector<PointId>> rows;
};

struct NullGridCheck {
  bool ok = true;
  std::string what;
  std::optional<std::size_t> row, col;
  explicit operator bool() const { return ok; }
  std::string describe() const;
};

/// Row and column checks only. When `top` is given, rows[0] must equal it.
NullGridCheck validate_null_grid(const NullHomotopyGrid& grid, const std::vector<PointId>* top = nullptr);

class ValidationFailure : public Error {
 public:
  ValidationFailure(const std::string& what, std::size_t row, std::size_t col)
      : Error(what + " at row " + std::to_string(row) + ", column " + std::to_string(col)), row_(row), col_(col) {}
  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_, col_;
};

struct NullResult {
  bool null = false;
  std::optional<NullHomotopyGrid> grid;
  /// Stationary points appended to the loop in the successful search.
  std::size_t padding = 0;
  std::size_t states = 0;
  /// Some padding level ran out of budget (otherwise every level was exhausted).
  bool budget_hit = false;
};

/**
 * Breadth-first search over same-length r-loops at the loop's start point,
 * one step moving every point by at most r with both ends fixed, towards the
 * constant loop. The loop is padded at its end by 0..padding_max stationary
 * points. A negative answer only covers the explored horizon.
 */
NullResult is_null_homotopic(const SpacePtr& space, const DiscretePath& loop, std::size_t padding_max,
                             const SearchOptions& opts = {});

/**
 * The two-sided matrix built from a contraction: with G(x, 0) = c and
 * G(x, m) = x, row i is c repeated m - i times, G(x0, 0..i-1), the loop pushed
 * to G(-, i), then the mirror image of the prefix. Row m is gamma * f *
 * gamma^-1 (gamma the track of x0), row 0 is constant. The returned grid is
 * based at c and lists rows from gamma * f * gamma^-1 down to the constant.
 * Throws ValidationFailure if a row or column check fails.
 */
NullHomotopyGrid lemma_certificate(const ContractibilityCertificate& cert, const DiscretePath& loop);

}  // namespace hforge
