#include <doctest.h>

#include <cmath>
#include <random>

#include "hforge/metric.hpp"

using namespace hforge;

TEST_CASE("validate_metric accepts and rejects") {
  auto two = validate_metric({{0, 1}, {1, 0}});
  CHECK(two->size() == 2);
  CHECK(two->label(1) == "p1");

  try {
    validate_metric({{0, 3}, {1, 0}});
    FAIL("asymmetry accepted");
  } catch (const MetricError& e) {
    CHECK(e.kind() == MetricErrorKind::Asymmetry);
  }
  try {
    validate_metric({{0, 1, 3}, {1, 0, 1}, {3, 1, 0}});
    FAIL("triangle violation accepted");
  } catch (const MetricError& e) {
    CHECK(e.kind() == MetricErrorKind::TriangleViolation);
    CHECK(e.i() == 0);
    CHECK(e.j() == 2);
    CHECK(e.k() == 1);
  }
  CHECK_THROWS_AS(validate_metric({{0, -1}, {-1, 0}}), MetricError);
  CHECK_THROWS_AS(validate_metric({{0, 0}, {0, 0}}), MetricError);
  CHECK_THROWS_AS(validate_metric({{0, 1}}), MetricError);
  CHECK_THROWS_AS(validate_metric({"a"}, {{0, 1}, {1, 0}}), MetricError);
}

TEST_CASE("l1 product") {
  auto a = validate_metric({{0, 1}, {1, 0}});
  auto b = validate_metric({{0, 1}, {1, 0}});
  auto p = l1_product(a, b);
  CHECK(p.space->d(p.pair(0, 0), p.pair(1, 1)) == doctest::Approx(2));
  CHECK(p.space->d(p.pair(0, 0), p.pair(0, 1)) == doctest::Approx(1));

  auto hex = gen_circle(6, 1);
  auto q = l1_product(hex, IntervalSpace{0}.space());
  for (PointId i = 0; i < 6; ++i)
    for (PointId j = 0; j < 6; ++j) CHECK(q.space->d(q.pair(i, 0), q.pair(j, 0)) == doctest::Approx(hex->d(i, j)));

  // symmetric up to the swap isometry
  auto c = gen_interval_grid(2, 1);
  auto ac = l1_product(a, c), ca = l1_product(c, a);
  for (PointId x = 0; x < 2; ++x)
    for (PointId y = 0; y < 3; ++y)
      for (PointId x2 = 0; x2 < 2; ++x2)
        for (PointId y2 = 0; y2 < 3; ++y2)
          CHECK(ac.space->d(ac.pair(x, y), ac.pair(x2, y2)) == ca.space->d(ca.pair(y, x), ca.pair(y2, x2)));
}

TEST_CASE("generators") {
  auto sq = gen_circle(4, 1);
  CHECK(sq->d(0, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(sq->d(0, 2) == doctest::Approx(2));
  CHECK(sq->diameter() == 2.0);
  CHECK(gen_circle(6, 1)->d(0, 1) == doctest::Approx(1));
  auto tri = gen_circle(3, 1);
  CHECK(tri->d(0, 2) == doctest::Approx(std::sqrt(3.0)));
  CHECK(gen_circle(8, 2.5)->diameter() == 5.0);

  auto iv = gen_interval_grid(2, 1);
  CHECK(iv->size() == 3);
  CHECK(iv->d(0, 2) == doctest::Approx(1));
  CHECK(iv->d(0, 1) == doctest::Approx(0.5));
  CHECK(gen_interval_grid(7, 3)->diameter() == doctest::Approx(3));

  auto w1 = gen_wedge_circles(1, 6, 1);
  auto hex = gen_circle(6, 1);
  REQUIRE(w1->size() == 6);
  for (PointId i = 0; i < 6; ++i)
    for (PointId j = 0; j < 6; ++j) CHECK(w1->d(i, j) == doctest::Approx(hex->d(i, j)));

  auto w = gen_wedge_circles(2, 6, 1);
  CHECK(w->size() == 11);
  int bases = 0;
  for (auto& l : w->labels()) bases += l == "b";
  CHECK(bases == 1);
  const PointId b = w->at("b");
  for (auto& l1 : w->labels())
    for (auto& l2 : w->labels())
      if (l1[0] == 'c' && l2[0] == 'c' && l1[1] != l2[1]) {
        PointId x = w->at(l1), y = w->at(l2);
        CHECK(w->d(x, y) == doctest::Approx(w->d(x, b) + w->d(b, y)));
      }

  auto he = gen_hawaiian(3, 8);
  CHECK(he->size() == 22);
  CHECK(he->diameter() == doctest::Approx(2));
  auto h1 = gen_hawaiian(1, 5);
  // every point of the first circle is at distance 1 from the centre (1,0):
  // d(o, p)^2 = 2 - 2 cos(theta) with o the origin
  const PointId o = h1->at("o");
  for (PointId p = 0; p < h1->size(); ++p) {
    CHECK(h1->d(o, p) <= 2.0 + 1e-12);
  }
}

TEST_CASE("path space and interval") {
  auto iv = IntervalSpace{3}.space();
  CHECK(iv->d(0, 3) == 3);
  CHECK(iv->label(2) == "2");
  PathSpace ps{gen_circle(6, 1), 2, 1.0};
  std::vector<PointId> a{0, 1, 2}, b{0, 5, 4}, bad{0, 2, 4};
  CHECK(ps.contains(a));
  CHECK_FALSE(ps.contains(bad));
  CHECK(ps.distance(a, b) == doctest::Approx(std::sqrt(3.0)));
}

TEST_CASE("random spaces validate and subspaces inherit distances") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 20; ++t) {
    std::vector<std::vector<double>> coords(6, std::vector<double>(2));
    std::vector<std::string> labels;
    for (int i = 0; i < 6; ++i) {
      coords[i] = {u(rng), u(rng)};
      labels.push_back("q" + std::to_string(i));
    }
    auto sp = euclidean_space(labels, coords);
    std::vector<PointId> pick{4, 1, 3};
    auto sub = subspace(*sp, pick);
    CHECK(sub->label(0) == "q4");
    CHECK(sub->d(0, 2) == sp->d(4, 3));
  }
}
