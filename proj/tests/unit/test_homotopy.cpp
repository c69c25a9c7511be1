#include <doctest.h>

#include <algorithm>

#include "../support/oracles.hpp"
#include "hforge/homotopy.hpp"

using namespace hforge;

namespace {

HomotopyGrid square_grid(double r) {
  auto sq = gen_circle(4, 1);
  return HomotopyGrid{1.0, r, {identity_map(sq), constant_map(sq, sq, 0)}};
}

}  // namespace

TEST_CASE("verify_homotopy on the square") {
  auto g = square_grid(2.0);
  const auto& sq = g.frames[0].domain;
  CHECK(verify_homotopy(g, identity_map(sq), constant_map(sq, sq, 0)).ok());

  auto bad = square_grid(1.0);
  auto c = verify_homotopy(bad, bad.frames[0], bad.frames[1]);
  CHECK(c.violation == GridViolation::TrackTooLong);
  REQUIRE(c.x);
  CHECK(sq->d(*c.x, 0) > 1.0);

  HomotopyGrid zero{1.0, 0.0, {identity_map(sq)}};
  CHECK(verify_homotopy(zero, identity_map(sq), identity_map(sq)).ok());
  CHECK(verify_homotopy(g, identity_map(sq), constant_map(sq, sq, 1)).violation == GridViolation::EndMismatch);
  CHECK_FALSE(verify_grid(HomotopyGrid{}).ok());
}

TEST_CASE("tracks are checked across non-adjacent frames") {
  // consecutive steps of 1 but a total displacement of 2 in two steps is fine
  // at r=1; squeeze the same displacement into a grid with r=0.9 and it fails
  auto iv = gen_interval_grid(2, 2);
  HomotopyGrid g{1.0, 1.0, {identity_map(iv), LipMap{iv, iv, 1.0, {0, 0, 1}}, constant_map(iv, iv, 0)}};
  CHECK(verify_null_homotopy(g, identity_map(iv)).ok());
  g.r = 0.9;
  CHECK_FALSE(verify_grid(g).ok());
}

TEST_CASE("homotopy_search basics") {
  auto far = validate_metric({{0, 3}, {3, 0}});
  auto id = identity_map(far);
  auto same = homotopy_search(id, id, 1.0, 1.0);
  REQUIRE(same.verdict == SearchVerdict::Found);
  CHECK(same.grid->steps() == 0);

  auto imp = homotopy_search(id, constant_map(far, far, 0), 1.0, 1.0);
  CHECK(imp.verdict == SearchVerdict::Impossible);

  auto near = validate_metric({{0, 1}, {1, 0}});
  auto one = homotopy_search(identity_map(near), constant_map(near, near, 0), 1.0, 1.0);
  REQUIRE(one.verdict == SearchVerdict::Found);
  CHECK(one.grid->steps() == 1);
}

TEST_CASE("hexagon: identity is not 1-null-homotopic, 2-null-homotopic") {
  auto hex = gen_circle(6, 1);
  CHECK(null_homotopy_search(identity_map(hex), 1.0, 1.0).verdict == SearchVerdict::Impossible);
  auto yes = null_homotopy_search(identity_map(hex), 1.0, 2.0);
  REQUIRE(yes.verdict == SearchVerdict::Found);
  CHECK(verify_null_homotopy(*yes.grid, identity_map(hex)).ok());
}

TEST_CASE("budget exhaustion is reported") {
  auto hex = gen_circle(6, 1);
  SearchOptions tiny;
  tiny.max_states = 3;
  CHECK(null_homotopy_search(identity_map(hex), 1.0, 1.0, tiny).verdict == SearchVerdict::BudgetExhausted);
}

TEST_CASE("search is symmetric and grids compose") {
  auto iv = gen_interval_grid(3, 1);
  auto id = identity_map(iv);
  auto c0 = constant_map(iv, iv, 0), c3 = constant_map(iv, iv, 3);
  double r = 1.0 / 3.0;
  auto a = homotopy_search(id, c0, 1.0, r);
  auto b = homotopy_search(c0, id, 1.0, r);
  REQUIRE(a.verdict == SearchVerdict::Found);
  REQUIRE(b.verdict == SearchVerdict::Found);
  CHECK(verify_homotopy(reversed(*a.grid), c0, id).ok());
  auto c = homotopy_search(id, c3, 1.0, r);
  REQUIRE(c.verdict == SearchVerdict::Found);
  auto glued = concat(reversed(*a.grid), *c.grid);
  CHECK(verify_homotopy(glued, c0, c3).ok());
  // monotone in (s, r)
  auto loose = *a.grid;
  loose.s = 2.0;
  loose.r = 1.0;
  CHECK(verify_homotopy(loose, id, c0).ok());
  CHECK(verify_homotopy(pad_to(*a.grid, a.grid->steps() + 3), id, c0).ok());
}

TEST_CASE("enumerate_neighbors edge cases") {
  auto hex = gen_circle(6, 1);
  auto id = identity_map(hex);
  CHECK(neighbors(id, 1.0, 0.0).size() == 1);
  auto tri = gen_interval_grid(2, 1);
  // r >= diameter and s >= diameter / min distance: every map
  CHECK(neighbors(identity_map(tri), 2.0, 1.0).size() == 27);
  auto far = validate_metric({{0, 3}, {3, 0}});
  auto nb = neighbors(identity_map(far), 1.0, 1.0);
  REQUIRE(nb.size() == 1);
  CHECK(nb[0] == identity_map(far));
}

TEST_CASE("enumerate_neighbors agrees with brute force on small spaces") {
  std::mt19937 rng(5);
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& m : oracle::small_metrics(n, {1, 2, 3})) {
      auto sp = validate_metric(m);
      for (double s : {1.0, 2.0}) {
        for (auto& f : oracle::all_maps(n, n)) {
          if (!oracle::lipschitz(m, m, f, s)) continue;
          LipMap lf{sp, sp, s, f};
          for (double r : {1.0, 2.0, 3.0}) {
            std::vector<oracle::Table> mine;
            enumerate_neighbors(lf, s, r, [&](std::span<const PointId> g) {
              mine.emplace_back(g.begin(), g.end());
              return true;
            });
            CHECK(mine == oracle::neighbours(m, m, f, s, r));
          }
        }
      }
    }
  }
}

TEST_CASE("null-homotopy search agrees with brute force contractibility") {
  for (std::size_t n = 1; n <= 4; ++n) {
    for (const auto& m : oracle::small_metrics(n, {1, 2, 3})) {
      auto sp = validate_metric(m);
      for (double r : {1.0, 2.0, 3.0}) {
        auto out = null_homotopy_search(identity_map(sp), 1.0, r);
        CHECK((out.verdict == SearchVerdict::Found) == oracle::contractible(m, r));
      }
    }
  }
}
