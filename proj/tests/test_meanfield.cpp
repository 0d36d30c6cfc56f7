#include <doctest.h>

#include <cmath>

#include "vcspace/meanfield.hpp"

using namespace vcspace;

TEST_CASE("trivial ensemble") {
  const MeanFieldSolution s = solve_fixed_point(0.0, 0.0);
  CHECK(s.pi1 == 1.0);
  CHECK(s.pi2 == 1.0);
  CHECK(s.Q == 0.0);
  CHECK(s.x == 0.0);
  CHECK(s.q_plus == 1.0);
  CHECK(s.q_zero == 0.0);
  CHECK(s.weight1() == 0.5);
}

TEST_CASE("unit mean degree solves pi = exp(-pi)") {
  const MeanFieldSolution s = solve_fixed_point(1.0, 1.0);
  CHECK(s.pi1 == doctest::Approx(0.567143).epsilon(1e-6));
  CHECK(std::abs(s.pi1 * std::exp(s.pi1) - 1.0) < 1e-10);
  CHECK(s.pi1 == doctest::Approx(s.pi2));
  CHECK(s.Q == 0.0);
  CHECK(s.residual <= kFixedPointTolerance);
}

TEST_CASE("giant component above the percolation point") {
  const MeanFieldSolution s = solve_fixed_point(2.0, 2.0);
  CHECK(s.Q == doctest::Approx(0.7968).epsilon(1e-4));
  CHECK(std::abs(s.Q - (1.0 - std::exp(-2.0 * s.Q))) < 1e-10);
  CHECK(solve_fixed_point(0.5, 1.9).Q == 0.0);
  CHECK(solve_fixed_point(0.6, 2.0).Q > 0.0);
}

TEST_CASE("side symmetry") {
  for (double c1 : {0.0, 0.3, 1.0, 2.5, 7.0}) {
    for (double c2 : {0.0, 0.8, 3.0, 12.0}) {
      const MeanFieldSolution a = solve_fixed_point(c1, c2);
      const MeanFieldSolution b = solve_fixed_point(c2, c1);
      CHECK(a.pi1 == doctest::Approx(b.pi2).epsilon(1e-11));
      CHECK(a.q1_zero == doctest::Approx(b.q2_zero).epsilon(1e-11));
      CHECK(a.x1 == doctest::Approx(b.x2).epsilon(1e-11));
      CHECK(a.Q1 == doctest::Approx(b.Q2).epsilon(1e-11));
      CHECK(a.x == doctest::Approx(b.x).epsilon(1e-11));
      CHECK(a.q_plus == doctest::Approx(b.q_plus).epsilon(1e-11));
    }
  }
}

TEST_CASE("identities across a grid") {
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double c1 = i;
      const double c2 = j;
      const MeanFieldSolution s = solve_fixed_point(c1, c2);
      INFO("c1=" << c1 << " c2=" << c2);
      CHECK(std::abs(s.pi1 - s.q1_plus) < 1e-12);
      CHECK(std::abs(s.pi2 - s.q2_plus) < 1e-12);
      CHECK(std::abs(s.x - (1.0 - s.q_plus - s.q_zero / 2.0)) < 1e-10);
      for (double f : {s.Q, s.Q1, s.Q2, s.pi1, s.pi2, s.x, s.x1, s.x2, s.q_plus, s.q_zero}) {
        CHECK(f >= 0.0);
        CHECK(f <= 1.0);
      }
    }
  }
}

TEST_CASE("side degrees") {
  const SideDegrees d = side_degrees(4.0, 1.0, 6.0);
  CHECK(d.c1 == doctest::Approx(3.75));
  CHECK(d.c2 == doctest::Approx(15.0));
  CHECK(2 * d.c1 * d.c2 / (d.c1 + d.c2) == doctest::Approx(6.0));
}

TEST_CASE("coverage plateaus") {
  CHECK(std::abs(theory_curve(4, 1, {6.0})[0].solution.x - 0.2) < 0.005);
  CHECK(std::abs(theory_curve(4, 2, {12.0})[0].solution.x - 1.0 / 3.0) < 0.005);
  CHECK(std::abs(theory_curve(4, 3, {14.0})[0].solution.x - 3.0 / 7.0) < 0.005);
}

TEST_CASE("theory curve is non-decreasing in c") {
  std::vector<double> grid;
  for (int k = 0; k <= 100; ++k) grid.push_back(0.1 * k);
  for (auto [a, b] : {std::pair{1.0, 1.0}, {4.0, 1.0}, {4.0, 2.0}, {4.0, 3.0}}) {
    const auto rows = theory_curve(a, b, grid);
    REQUIRE(rows.size() == grid.size());
    for (std::size_t k = 1; k < rows.size(); ++k) {
      CHECK(rows[k].c == grid[k]);
      CHECK(rows[k].solution.x >= rows[k - 1].solution.x - 1e-12);
    }
  }
  CHECK_THROWS_AS(theory_curve(1, 1, {-1.0}), MeanFieldError);
  CHECK_THROWS_AS(solve_fixed_point(-0.1, 1.0), MeanFieldError);
}

TEST_CASE("poisson pmf") {
  CHECK(poisson_pmf(0.0, 0) == 1.0);
  CHECK(poisson_pmf(0.0, 3) == 0.0);
  CHECK(poisson_pmf(1.0, 1) == doctest::Approx(std::exp(-1.0)));
  double sum = 0.0;
  for (unsigned k = 0; k <= 50; ++k) sum += poisson_pmf(4.0, k);
  CHECK(std::abs(sum - 1.0) < 1e-9);
}
