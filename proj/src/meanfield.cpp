#include "vcspace/meanfield.hpp"

#include <algorithm>
#include <cmath>

namespace vcspace {

namespace {

constexpr double kDamping = 0.5;

struct Pair {
  double a;
  double b;
};

// Damped iteration of (a, b) <- (f(b), g(a)) until both updates fall below
// the tolerance.
template <typename F, typename G>
Pair iterate(Pair start, F&& f, G&& g, const char* what, double& residual, std::size_t& iters) {
  Pair cur = start;
  for (std::size_t k = 1; k <= kMaxFixedPointIterations; ++k) {
    const Pair next{(1.0 - kDamping) * cur.a + kDamping * f(cur.b),
                    (1.0 - kDamping) * cur.b + kDamping * g(cur.a)};
    const double delta = std::max(std::abs(next.a - cur.a), std::abs(next.b - cur.b));
    cur = next;
    if (delta < kFixedPointTolerance) {
      residual = std::max(residual, delta);
      iters = std::max(iters, k);
      return cur;
    }
  }
  const double delta = std::max(std::abs(f(cur.b) - cur.a), std::abs(g(cur.a) - cur.b));
  throw MeanFieldError(std::string("mean-field ") + what + " iteration did not converge, residual " +
                           std::to_string(delta),
                       delta);
}

}  // namespace

double MeanFieldSolution::weight1() const {
  if (c1 + c2 <= 0.0) return 0.5;
  return c2 / (c1 + c2);
}

MeanFieldSolution solve_fixed_point(double c1, double c2) {
  if (!(c1 >= 0.0) || !(c2 >= 0.0)) throw MeanFieldError("mean degrees must be non-negative", 0.0);
  MeanFieldSolution s;
  s.c1 = c1;
  s.c2 = c2;

  const auto pi = iterate(
      {1.0, 1.0}, [&](double p2) { return std::exp(-c1 * p2); },
      [&](double p1) { return std::exp(-c2 * p1); }, "coverage", s.residual, s.iterations);
  s.pi1 = pi.a;
  s.pi2 = pi.b;

  const auto qp = iterate(
      {1.0, 1.0}, [&](double q2) { return std::exp(-c1 * q2); },
      [&](double q1) { return std::exp(-c2 * q1); }, "backbone", s.residual, s.iterations);
  s.q1_plus = qp.a;
  s.q2_plus = qp.b;

  // Below c1*c2 = 1 the only solution is Q = 0 and the iteration creeps
  // towards it sublinearly.
  if (c1 * c2 > 1.0) {
    const auto giant = iterate(
        {0.5, 0.5}, [&](double q2) { return 1.0 - std::exp(-c1 * q2); },
        [&](double q1) { return 1.0 - std::exp(-c2 * q1); }, "giant-component", s.residual,
        s.iterations);
    s.Q1 = giant.a;
    s.Q2 = giant.b;
  }

  const double w1 = s.weight1();
  const double w2 = 1.0 - w1;
  s.Q = w1 * s.Q1 + w2 * s.Q2;

  const double e1 = std::exp(-c1 * s.pi2);
  const double e2 = std::exp(-c2 * s.pi1);
  s.x1 = 1.0 - e1 - 0.5 * c1 * s.pi2 * e1;
  s.x2 = 1.0 - e2 - 0.5 * c2 * s.pi1 * e2;
  s.x = w1 * s.x1 + w2 * s.x2;

  s.q1_zero = c1 * s.q2_plus * std::exp(-c1 * s.q2_plus);
  s.q2_zero = c2 * s.q1_plus * std::exp(-c2 * s.q1_plus);
  s.q_plus = w1 * s.q1_plus + w2 * s.q2_plus;
  s.q_zero = w1 * s.q1_zero + w2 * s.q2_zero;
  return s;
}

SideDegrees side_degrees(double ratio_a, double ratio_b, double c) {
  // m = c (n1 + n2) / 2, c1 = m / n1, c2 = m / n2
  const double total = ratio_a + ratio_b;
  return {c * total / (2.0 * ratio_a), c * total / (2.0 * ratio_b)};
}

std::vector<TheoryRow> theory_curve(double ratio_a, double ratio_b, const std::vector<double>& c_grid) {
  std::vector<TheoryRow> rows;
  rows.reserve(c_grid.size());
  for (double c : c_grid) {
    if (!(c >= 0.0)) throw MeanFieldError("grid mean degree must be non-negative", 0.0);
    const auto d = side_degrees(ratio_a, ratio_b, c);
    rows.push_back({ratio_a, ratio_b, c, solve_fixed_point(d.c1, d.c2)});
  }
  return rows;
}

double poisson_pmf(double c, unsigned k) {
  if (c == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(k) * std::log(c) - c - std::lgamma(static_cast<double>(k) + 1.0));
}

}  // namespace vcspace
