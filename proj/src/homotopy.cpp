#include "hforge/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hforge/detail/bidir.hpp"
#include "hforge/detail/map_graph.hpp"
#include "hforge/paths.hpp"

namespace hforge {

HomotopyGrid reversed(const HomotopyGrid& grid) {
  HomotopyGrid out{grid.s, grid.r, grid.frames};
  std::reverse(out.frames.begin(), out.frames.end());
  return out;
}

HomotopyGrid concat(const HomotopyGrid& first, const HomotopyGrid& second) {
  if (first.frames.empty()) return second;
  if (second.frames.empty()) return first;
  if (!(first.frames.back() == second.frames.front())) {
    throw EndpointMismatch("homotopy concat: last frame of the first grid differs from the first frame of the second");
  }
  HomotopyGrid out{std::max(first.s, second.s), std::max(first.r, second.r), first.frames};
  out.frames.insert(out.frames.end(), second.frames.begin() + 1, second.frames.end());
  for (auto& fr : out.frames) fr.s = out.s;
  return out;
}

HomotopyGrid pad_to(const HomotopyGrid& grid, std::size_t m) {
  HomotopyGrid out = grid;
  while (!out.frames.empty() && out.steps() < m) out.frames.push_back(out.frames.back());
  return out;
}

const char* to_string(GridViolation v) {
  switch (v) {
    case GridViolation::None: return "none";
    case GridViolation::Empty: return "empty grid";
    case GridViolation::SpaceMismatch: return "frames over different spaces";
    case GridViolation::NotLipschitz: return "frame not s-Lipschitz";
    case GridViolation::TrackTooLong: return "track not r-Lipschitz";
    case GridViolation::StartMismatch: return "first frame differs from f";
    case GridViolation::EndMismatch: return "last frame differs from g";
    case GridViolation::NotConstant: return "last frame not constant";
  }
  return "?";
}

std::string GridCheck::describe() const {
  std::ostringstream os;
  os << to_string(violation);
  if (x) os << " x=" << *x;
  if (x2) os << " x'=" << *x2;
  if (i) os << " i=" << *i;
  if (j) os << " j=" << *j;
  return os.str();
}

GridCheck verify_grid(const HomotopyGrid& grid) {
  GridCheck c;
  if (grid.frames.empty()) {
    c.violation = GridViolation::Empty;
    return c;
  }
  const auto& X = grid.frames.front().domain;
  const auto& Y = grid.frames.front().codomain;
  if (!X || !Y) {
    c.violation = GridViolation::SpaceMismatch;
    return c;
  }
  const std::size_t n = X->size();
  for (std::size_t i = 0; i < grid.frames.size(); ++i) {
    const auto& fr = grid.frames[i];
    if (fr.domain != X || fr.codomain != Y || fr.table.size() != n ||
        std::any_of(fr.table.begin(), fr.table.end(), [&](PointId y) { return y >= Y->size(); })) {
      c.violation = GridViolation::SpaceMismatch;
      c.i = i;
      return c;
    }
  }
  for (std::size_t i = 0; i < grid.frames.size(); ++i) {
    const auto& t = grid.frames[i].table;
    for (PointId a = 0; a < n; ++a) {
      for (PointId b = a + 1; b < n; ++b) {
        if (!Y->leq(Y->d(t[a], t[b]), grid.s * X->d(a, b))) {
          c.violation = GridViolation::NotLipschitz;
          c.x = a;
          c.x2 = b;
          c.i = i;
          return c;
        }
      }
    }
  }
  const std::size_t frames = grid.frames.size();
  for (PointId x = 0; x < n; ++x) {
    for (std::size_t i = 0; i < frames; ++i) {
      for (std::size_t j = i + 1; j < frames; ++j) {
        const double bound = grid.r * static_cast<double>(j - i);
        if (!Y->leq(Y->d(grid.at(x, i), grid.at(x, j)), bound)) {
          c.violation = GridViolation::TrackTooLong;
          c.x = x;
          c.i = i;
          c.j = j;
          return c;
        }
      }
    }
  }
  return c;
}

namespace {

GridCheck check_endpoint(const HomotopyGrid& grid, const LipMap& f, bool start) {
  GridCheck c;
  const LipMap& fr = start ? grid.frames.front() : grid.frames.back();
  if (!fr.same_spaces(f)) {
    c.violation = GridViolation::SpaceMismatch;
    return c;
  }
  for (PointId x = 0; x < f.table.size(); ++x) {
    if (fr.table[x] != f.table[x]) {
      c.violation = start ? GridViolation::StartMismatch : GridViolation::EndMismatch;
      c.x = x;
      c.i = start ? 0 : grid.steps();
      return c;
    }
  }
  return c;
}

}  // namespace

GridCheck verify_homotopy(const HomotopyGrid& grid, const LipMap& f, const LipMap& g) {
  GridCheck c = verify_grid(grid);
  if (!c) return c;
  c = check_endpoint(grid, f, true);
  if (!c) return c;
  return check_endpoint(grid, g, false);
}

GridCheck verify_null_homotopy(const HomotopyGrid& grid, const LipMap& f) {
  GridCheck c = verify_grid(grid);
  if (!c) return c;
  c = check_endpoint(grid, f, true);
  if (!c) return c;
  const auto& t = grid.frames.back().table;
  for (PointId x = 1; x < t.size(); ++x) {
    if (t[x] != t[0]) {
      c.violation = GridViolation::NotConstant;
      c.x = 0;
      c.x2 = x;
      c.i = grid.steps();
      return c;
    }
  }
  return c;
}

const char* to_string(SearchVerdict v) {
  switch (v) {
    case SearchVerdict::Found: return "found";
    case SearchVerdict::Impossible: return "impossible";
    case SearchVerdict::BudgetExhausted: return "budget_exhausted";
  }
  return "?";
}

namespace {

void require_lipschitz(const LipMap& f, double s, const char* who) {
  if (f.table.size() != f.domain->size()) throw PartialMap(std::string(who) + ": table does not cover the domain");
  if (!is_lipschitz(f, s)) throw Error(std::string(who) + ": map is not s-Lipschitz");
}

SearchOutcome run_search(const LipMap& f, const std::vector<std::vector<PointId>>& targets, double s, double r,
                         const SearchOptions& opts) {
  detail::NeighborEnumerator nb(*f.domain, *f.codomain, s, r);
  auto res = detail::bidirectional_reach(nb, std::span<const PointId>(f.table), targets, opts.max_states);
  SearchOutcome out;
  out.states_visited = res.states;
  switch (res.status) {
    case detail::Reach::Exhausted: out.verdict = SearchVerdict::Impossible; return out;
    case detail::Reach::Budget: out.verdict = SearchVerdict::BudgetExhausted; return out;
    case detail::Reach::Found: break;
  }
  HomotopyGrid grid{s, r, {}};
  for (auto& t : res.chain) grid.frames.push_back(LipMap{f.domain, f.codomain, s, std::move(t)});
  out.verdict = SearchVerdict::Found;
  out.grid = std::move(grid);
  return out;
}

}  // namespace

SearchOutcome homotopy_search(const LipMap& f, const LipMap& g, double s, double r, const SearchOptions& opts) {
  if (!f.same_spaces(g)) throw DomainMismatch("homotopy_search: f and g act between different spaces");
  require_lipschitz(f, s, "homotopy_search");
  require_lipschitz(g, s, "homotopy_search");
  SearchOutcome out = run_search(f, {g.table}, s, r, opts);
  if (out.grid) {
    auto c = verify_homotopy(*out.grid, f, g);
    if (!c) throw Error("homotopy_search produced an invalid grid: " + c.describe());
  }
  return out;
}

SearchOutcome null_homotopy_search(const LipMap& f, double s, double r, const SearchOptions& opts) {
  require_lipschitz(f, s, "null_homotopy_search");
  std::vector<std::vector<PointId>> targets;
  const std::size_t n = f.domain->size();
  for (PointId p = 0; p < f.codomain->size(); ++p) targets.emplace_back(n, p);
  SearchOutcome out = run_search(f, targets, s, r, opts);
  if (out.grid) {
    auto c = verify_null_homotopy(*out.grid, f);
    if (!c) throw Error("null_homotopy_search produced an invalid grid: " + c.describe());
  }
  return out;
}

void enumerate_neighbors(const LipMap& f, double s, double r,
                         const std::function<bool(std::span<const PointId>)>& visit) {
  detail::NeighborEnumerator nb(*f.domain, *f.codomain, s, r);
  nb.for_each(std::span<const PointId>(f.table), [&](std::span<const PointId> g) { return visit(g); });
}

std::vector<LipMap> neighbors(const LipMap& f, double s, double r) {
  std::vector<LipMap> out;
  enumerate_neighbors(f, s, r, [&](std::span<const PointId> g) {
    out.push_back(LipMap{f.domain, f.codomain, s, std::vector<PointId>(g.begin(), g.end())});
    return true;
  });
  return out;
}

}  // namespace hforge
