#include <doctest.h>

#include "curvelab/lp_solver.hpp"

using namespace curvelab;

TEST_CASE("simple maxima") {
  // max x + y, x <= 1, y <= 2
  auto r = solve_lp({{1, 0}, {0, 1}}, {1, 2}, {1, 1});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(3.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[1] == doctest::Approx(2.0));
}

TEST_CASE("binding combination constraint") {
  // max 2x + 3y, x + y <= 4, x <= 3, y <= 3
  auto r = solve_lp({{1, 1}, {1, 0}, {0, 1}}, {4, 3, 3}, {2, 3});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(11.0));  // x = 1, y = 3
}

TEST_CASE("negative rhs needs phase one") {
  // max -x subject to -x <= -2  (x >= 2)
  auto r = solve_lp({{-1}}, {-2}, {-1});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(-2.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
}

TEST_CASE("equality encoded as two inequalities") {
  // max x + 2y with x + y = 1, y <= 0.4
  auto r = solve_lp({{1, 1}, {-1, -1}, {0, 1}}, {1, -1, 0.4}, {1, 2});
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(1.4));
  CHECK(r.x[0] == doctest::Approx(0.6));
  CHECK(r.x[1] == doctest::Approx(0.4));
}

TEST_CASE("infeasible") {
  // x <= 1 and x >= 2
  auto r = solve_lp({{1}, {-1}}, {1, -2}, {1});
  CHECK(r.status == LpStatus::infeasible);
}

TEST_CASE("unbounded") {
  auto r = solve_lp({{-1}}, {0}, {1});
  CHECK(r.status == LpStatus::unbounded);
}

TEST_CASE("degenerate cycling-prone instance terminates") {
  // Chvatal's degenerate example on which Dantzig's rule cycles; the
  // optimum is x = (1, 0, 1, 0) with value 1.
  std::vector<std::vector<double>> A = {
      {0.5, -5.5, -2.5, 9.0},
      {0.5, -1.5, -0.5, 1.0},
      {1.0, 0.0, 0.0, 0.0},
  };
  std::vector<double> b = {0.0, 0.0, 1.0};
  std::vector<double> c = {10.0, -57.0, -9.0, -24.0};
  auto r = solve_lp(A, b, c);
  REQUIRE(r.status == LpStatus::optimal);
  CHECK(r.objective == doctest::Approx(1.0));
  CHECK(r.x[0] == doctest::Approx(1.0));
  CHECK(r.x[2] == doctest::Approx(1.0));
}

TEST_CASE("no variables") {
  auto feasible = solve_lp({{}, {}}, {1.0, 0.0}, {});
  CHECK(feasible.status == LpStatus::optimal);
  auto infeasible = solve_lp({{}}, {-1.0}, {});
  CHECK(infeasible.status == LpStatus::infeasible);
}
