#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace vcspace {

/// Ensemble fixed point for random bipartite graphs with side mean degrees
/// c1 (X1) and c2 (X2). Side-1/side-2 fields follow the same convention.
struct MeanFieldSolution {
  double c1 = 0.0;
  double c2 = 0.0;
  double Q1 = 0.0, Q2 = 0.0, Q = 0.0;  ///< giant-component fractions
  double pi1 = 1.0, pi2 = 1.0;         ///< coverage-requirement probabilities
  double x1 = 0.0, x2 = 0.0, x = 0.0;  ///< coverage fractions
  double q1_plus = 1.0, q2_plus = 1.0, q_plus = 1.0;  ///< uncovered backbones
  double q1_zero = 0.0, q2_zero = 0.0, q_zero = 0.0;  ///< unfrozen nodes
  double residual = 0.0;  ///< largest update in the final iteration
  std::size_t iterations = 0;

  /// Whole-graph weight of X1; X2 gets 1 minus this.
  double weight1() const;
  double q_minus() const { return 1.0 - q_plus - q_zero; }
};

class MeanFieldError : public std::runtime_error {
 public:
  MeanFieldError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

inline constexpr double kFixedPointTolerance = 1e-12;
inline constexpr std::size_t kMaxFixedPointIterations = 1'000'000;

/// Damped (factor 0.5) iteration of pi1 = exp(-c1 pi2), pi2 = exp(-c2 pi1)
/// from (1,1), the same map for the uncovered-backbone fractions, and
/// Q1 = 1 - exp(-c1 Q2), Q2 = 1 - exp(-c2 Q1) from (0.5, 0.5).
/// Throws MeanFieldError when an iteration does not converge.
MeanFieldSolution solve_fixed_point(double c1, double c2);

/// Side mean degrees for a size ratio a:b and whole-graph mean degree c.
struct SideDegrees {
  double c1 = 0.0;
  double c2 = 0.0;
};
SideDegrees side_degrees(double ratio_a, double ratio_b, double c);

struct TheoryRow {
  double ratio_a = 1.0;
  double ratio_b = 1.0;
  double c = 0.0;
  MeanFieldSolution solution;
};

/// One solved row per mean degree in `c_grid`.
std::vector<TheoryRow> theory_curve(double ratio_a, double ratio_b, const std::vector<double>& c_grid);

/// c^k e^{-c} / k!
double poisson_pmf(double c, unsigned k);

}  // namespace vcspace
