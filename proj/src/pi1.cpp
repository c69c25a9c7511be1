#include "hforge/pi1.hpp"

#include <algorithm>
#include <sstream>

#include "hforge/detail/bidir.hpp"
#include "hforge/detail/map_graph.hpp"

namespace hforge {

bool is_r_loop(const FiniteMetricSpace& space, const DiscretePath& loop, PointId basepoint) {
  if (loop.points.empty()) return false;
  return loop.front() == basepoint && loop.back() == basepoint && is_r_path(space, loop).ok;
}

std::string NullGridCheck::describe() const {
  if (ok) return "ok";
  std::ostringstream os;
  os << what;
  if (row) os << " row " << *row;
  if (col) os << " column " << *col;
  return os.str();
}

NullGridCheck validate_null_grid(const NullHomotopyGrid& g, const std::vector<PointId>* top) {
  NullGridCheck c;
  auto fail = [&](const char* what, std::optional<std::size_t> row, std::optional<std::size_t> col) {
    c.ok = false;
    c.what = what;
    c.row = row;
    c.col = col;
    return c;
  };
  if (!g.space || g.rows.empty()) return fail("empty grid", std::nullopt, std::nullopt);
  const auto& X = *g.space;
  if (g.basepoint >= X.size()) return fail("basepoint outside the space", std::nullopt, std::nullopt);
  const std::size_t width = g.rows.front().size();
  if (width == 0) return fail("empty row", 0, std::nullopt);
  for (std::size_t i = 0; i < g.rows.size(); ++i) {
    const auto& row = g.rows[i];
    if (row.size() != width) return fail("rows of different lengths", i, std::nullopt);
    for (std::size_t j = 0; j < width; ++j)
      if (row[j] >= X.size()) return fail("point outside the space", i, j);
    if (row.front() != g.basepoint) return fail("row does not start at the basepoint", i, 0);
    if (row.back() != g.basepoint) return fail("row does not end at the basepoint", i, width - 1);
    for (std::size_t j = 0; j + 1 < width; ++j)
      if (!X.leq(X.d(row[j], row[j + 1]), g.r)) return fail("row step longer than r", i, j);
  }
  for (std::size_t j = 0; j < width; ++j)
    for (std::size_t i = 0; i + 1 < g.rows.size(); ++i)
      if (!X.leq(X.d(g.rows[i][j], g.rows[i + 1][j]), g.r)) return fail("column step longer than r", i, j);
  if (top && g.rows.front() != *top) return fail("first row differs from the loop", 0, std::nullopt);
  for (std::size_t j = 0; j < width; ++j)
    if (g.rows.back()[j] != g.basepoint) return fail("last row is not constant", g.rows.size() - 1, j);
  return c;
}

NullResult is_null_homotopic(const SpacePtr& space, const DiscretePath& loop, std::size_t padding_max,
                             const SearchOptions& opts) {
  if (loop.points.empty()) throw Error("is_null_homotopic: empty loop");
  const PointId p = loop.front();
  if (!is_r_loop(*space, loop, p)) throw Error("is_null_homotopic: not an r-loop at its start point");
  NullResult out;
  for (std::size_t pad = 0; pad <= padding_max; ++pad) {
    std::vector<PointId> start = loop.points;
    start.resize(start.size() + pad, p);
    const std::size_t len = start.size() - 1;
    // Loops of length len are maps [len] -> X that are r-Lipschitz for |i - j|.
    auto interval = IntervalSpace{static_cast<int>(len)}.space();
    detail::NeighborEnumerator nb(*interval, *space, loop.r, loop.r);
    nb.pin(0);
    nb.pin(len);
    std::vector<std::vector<PointId>> target{std::vector<PointId>(len + 1, p)};
    auto res = detail::bidirectional_reach(nb, std::span<const PointId>(start), target, opts.max_states);
    out.states += res.states;
    if (res.status == detail::Reach::Budget) out.budget_hit = true;
    if (res.status != detail::Reach::Found) continue;
    NullHomotopyGrid grid{space, loop.r, p, std::move(res.chain)};
    if (auto c = validate_null_grid(grid, &start); !c) throw Error("is_null_homotopic produced an invalid grid: " + c.describe());
    out.null = true;
    out.padding = pad;
    out.grid = std::move(grid);
    return out;
  }
  return out;
}

NullHomotopyGrid lemma_certificate(const ContractibilityCertificate& cert, const DiscretePath& loop) {
  const auto& X = *cert.space;
  if (loop.points.empty() || loop.front() != loop.back() || !is_r_path(X, loop).ok) {
    throw Error("lemma_certificate: the loop is not an r-loop");
  }
  const std::size_t m = cert.grid.steps();
  const std::size_t n = loop.length();
  // G(x, i) with G(-, 0) constant and G(-, m) the identity
  auto G = [&](PointId x, std::size_t i) { return cert.grid.at(x, m - i); };
  const PointId c = cert.basepoint;
  const PointId x0 = loop.front();

  NullHomotopyGrid grid{cert.space, std::max(cert.r, loop.r), c, {}};
  for (std::size_t i = 0; i <= m; ++i) {
    std::vector<PointId> left(m - i, c);
    for (std::size_t k = 0; k < i; ++k) left.push_back(G(x0, k));
    std::vector<PointId> row = left;
    for (std::size_t j = 0; j <= n; ++j) row.push_back(G(loop.points[j], i));
    row.insert(row.end(), left.rbegin(), left.rend());
    grid.rows.push_back(std::move(row));
  }
  std::reverse(grid.rows.begin(), grid.rows.end());
  if (auto chk = validate_null_grid(grid); !chk) {
    throw ValidationFailure(chk.what, chk.row.value_or(0), chk.col.value_or(0));
  }
  return grid;
}

}  // namespace hforge
