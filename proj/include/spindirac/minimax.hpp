#pragma once

#include <Eigen/Dense>

namespace spindirac {

// min c.x subject to A x = b, x >= 0, with b >= 0. Two-phase dense simplex, Bland's rule.
struct LinearProgramResult {
  bool feasible = false;
  bool bounded = true;
  double value = 0.0;
  Eigen::VectorXd x;
  Eigen::VectorXd y;  // multipliers of the equality rows: optimal for max b.y, A^T y <= c
};
LinearProgramResult solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& c);

// Best uniform approximation of a constant by convex combinations of the rows of F (m x K):
// min over w in the simplex and level k of max_i |sum_j w_j F(j, i) - k|.
struct MinimaxResult {
  Eigen::VectorXd weights;
  double level = 0.0;
  double residual = 0.0;  // evaluated at the returned weights
  double lp_value = 0.0;  // optimum reported by the LP
};
MinimaxResult simplex_minimax(const Eigen::MatrixXd& F);

}  // namespace spindirac
