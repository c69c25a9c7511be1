#include <doctest.h>

#include <random>

#include "../support/oracles.hpp"
#include "hforge/paths.hpp"

using namespace hforge;

TEST_CASE("is_r_path") {
  auto hex = gen_circle(6, 1);
  std::vector<PointId> one{3};
  CHECK(is_r_path(*hex, one, 1.0).ok);
  std::vector<PointId> walk{0, 1, 2, 3, 4, 5, 0};
  CHECK(is_r_path(*hex, walk, 1.0).ok);
  auto two = validate_metric({{0, 1.5}, {1.5, 0}});
  std::vector<PointId> jump{0, 1};
  auto c = is_r_path(*two, jump, 1.0);
  CHECK_FALSE(c.ok);
  CHECK(c.violation == std::size_t{0});
  std::vector<PointId> stray{0, 7};
  CHECK_THROWS_AS(is_r_path(*two, stray, 1.0), UnknownPoint);
  // an r-path is an r'-path for r' >= r
  CHECK(is_r_path(*hex, walk, 1.5).ok);
}

TEST_CASE("concat and reverse") {
  DiscretePath a{1.0, {0, 1, 2}}, b{1.0, {2, 3, 4, 5}};
  auto ab = concat(a, b);
  CHECK(ab.length() == 5);
  CHECK(reverse(reverse(ab)) == ab);
  auto loop = concat(a, reverse(a));
  CHECK(loop.front() == loop.back());
  CHECK_THROWS_AS(concat(b, a), EndpointMismatch);
  CHECK(pad_to(a, 4).points == std::vector<PointId>{0, 1, 2, 2, 2});
}

TEST_CASE("components") {
  auto hex = gen_circle(6, 1);
  CHECK(r_connected_components(*hex, 1.0).size() == 1);
  CHECK(r_connected_components(*hex, 0.5).size() == 6);
  auto far = validate_metric({{0, 3}, {3, 0}});
  CHECK(r_connected_components(*far, 1.0).size() == 2);
  CHECK_FALSE(is_r_connected(*far, 1.0));
}

TEST_CASE("shortest_r_path") {
  auto hex = gen_circle(6, 1);
  auto p = shortest_r_path(*hex, 1.0, 0, 3);
  REQUIRE(p);
  CHECK(p->length() == 3);
  CHECK(p->points == std::vector<PointId>{0, 1, 2, 3});  // label order tie-break
  CHECK(shortest_r_path(*hex, 1.0, 2, 2)->length() == 0);
  auto far = validate_metric({{0, 3}, {3, 0}});
  CHECK_FALSE(shortest_r_path(*far, 1.0, 0, 1));
}

TEST_CASE("shortest_r_path matches all-pairs oracle") {
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    auto m = oracle::random_metric(rng, 6, {1, 2, 3});
    auto sp = validate_metric(m);
    for (double r : {1.0, 2.0}) {
      auto h = oracle::hops(m, r);
      auto mine = hop_distances(*sp, r);
      for (PointId x = 0; x < 6; ++x)
        for (PointId y = 0; y < 6; ++y) {
          CHECK(mine[x][y] == h[x][y]);
          auto p = shortest_r_path(*sp, r, x, y);
          if (h[x][y] < 0) {
            CHECK_FALSE(p);
          } else {
            REQUIRE(p);
            CHECK(static_cast<int>(p->length()) == h[x][y]);
            CHECK(is_r_path(*sp, *p).ok);
            CHECK(p->front() == x);
            CHECK(p->back() == y);
          }
        }
    }
  }
}
