#include "spindirac/minimax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "spindirac/errors.hpp"

namespace spindirac {

namespace {

constexpr double kPivotTol = 1e-11;

// Tableau rows 0..m-1 are constraints, row m is the reduced cost row; last column is the rhs.
struct Tableau {
  Eigen::MatrixXd T;
  std::vector<int> basis;

  int rows() const { return static_cast<int>(T.rows()) - 1; }
  int cols() const { return static_cast<int>(T.cols()) - 1; }

  void pivot(int r, int c) {
    T.row(r) /= T(r, c);
    for (int i = 0; i < T.rows(); ++i)
      if (i != r && T(i, c) != 0.0) T.row(i) -= T(i, c) * T.row(r);
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Returns false when unbounded. Columns at or beyond `limit` never enter.
  bool run(int limit) {
    for (int iter = 0; iter < 100000; ++iter) {
      int enter = -1;
      for (int j = 0; j < limit; ++j)
        if (T(rows(), j) < -kPivotTol) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (T(i, enter) <= kPivotTol) continue;
        const double ratio = T(i, cols()) / T(i, enter);
        const bool tie = leave >= 0 && std::abs(ratio - best) <= 1e-14 * (1.0 + std::abs(best));
        if ((!tie && ratio < best) ||
            (tie && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
          best = std::min(best, ratio);
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
    throw Error(ErrorKind::SolverFailure, "simplex iteration limit reached");
  }
};

}  // namespace

LinearProgramResult solve_standard_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                                      const Eigen::VectorXd& c) {
  const int m = static_cast<int>(A.rows()), n = static_cast<int>(A.cols());
  if (b.size() != m || c.size() != n) throw Error(ErrorKind::InvalidInput, "LP dimension mismatch");
  if ((b.array() < 0.0).any()) throw Error(ErrorKind::InvalidInput, "LP right-hand side must be non-negative");

  Tableau tab;
  tab.T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  tab.T.topLeftCorner(m, n) = A;
  tab.T.block(0, n, m, m).setIdentity();
  tab.T.col(n + m).head(m) = b;
  tab.basis.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) tab.basis[static_cast<std::size_t>(i)] = n + i;
  // phase one: minimize the sum of artificials
  for (int i = 0; i < m; ++i) tab.T.row(m) -= tab.T.row(i);
  tab.T.block(m, n, 1, m).setZero();
  tab.run(n + m);

  LinearProgramResult res;
  const double infeas = -tab.T(m, n + m);
  if (infeas > 1e-9 * (1.0 + b.cwiseAbs().sum())) return res;
  res.feasible = true;
  // drive remaining artificials out of the basis
  for (int i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    for (int j = 0; j < n; ++j)
      if (std::abs(tab.T(i, j)) > kPivotTol) {
        tab.pivot(i, j);
        break;
      }
  }
  // phase two
  tab.T.row(m).setZero();
  tab.T.row(m).head(n) = c.transpose();
  for (int i = 0; i < m; ++i) {
    const int k = tab.basis[static_cast<std::size_t>(i)];
    if (k < n) tab.T.row(m) -= c(k) * tab.T.row(i);
  }
  if (!tab.run(n)) {
    res.bounded = false;
    return res;
  }
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i) {
    const int k = tab.basis[static_cast<std::size_t>(i)];
    if (k < n) res.x(k) = tab.T(i, n + m);
  }
  res.value = c.dot(res.x);
  // y from B^T y = c_B; a redundant row keeps an artificial basic with zero cost
  Eigen::MatrixXd B(m, m);
  Eigen::VectorXd cB(m);
  for (int i = 0; i < m; ++i) {
    const int k = tab.basis[static_cast<std::size_t>(i)];
    if (k < n) {
      B.col(i) = A.col(k);
      cB(i) = c(k);
    } else {
      B.col(i) = Eigen::VectorXd::Unit(m, k - n);
      cB(i) = 0.0;
    }
  }
  res.y = B.transpose().colPivHouseholderQr().solve(cB);
  return res;
}

MinimaxResult simplex_minimax(const Eigen::MatrixXd& F) {
  const int m = static_cast<int>(F.rows()), K = static_cast<int>(F.cols());
  if (m < 1 || K < 1) throw Error(ErrorKind::InvalidInput, "empty minimax data");
  // Dual problem in standard form. Variables: p (K), q (K), mu+, mu-, slack (m).
  const int n = 2 * K + 2 + m;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m + 2, n);
  for (int j = 0; j < m; ++j) {
    A.block(j, 0, 1, K) = -F.row(j);
    A.block(j, K, 1, K) = F.row(j);
    A(j, 2 * K) = 1.0;
    A(j, 2 * K + 1) = -1.0;
    A(j, 2 * K + 2 + j) = 1.0;
  }
  A.block(m, 0, 1, K).setOnes();
  A.block(m, K, 1, K).setConstant(-1.0);
  A.block(m + 1, 0, 1, 2 * K).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(m + 2);
  b(m + 1) = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  c(2 * K) = -1.0;
  c(2 * K + 1) = 1.0;
  const auto lp = solve_standard_lp(A, b, c);
  if (!lp.feasible || !lp.bounded) throw Error(ErrorKind::SolverFailure, "minimax LP failed");

  MinimaxResult r;
  r.lp_value = -lp.value;
  r.weights = (-lp.y.head(m)).cwiseMax(0.0);
  const double s = r.weights.sum();
  if (s > 0.0)
    r.weights /= s;
  else
    r.weights.setConstant(1.0 / m);
  const Eigen::VectorXd comb = F.transpose() * r.weights;
  r.level = 0.5 * (comb.maxCoeff() + comb.minCoeff());
  r.residual = 0.5 * (comb.maxCoeff() - comb.minCoeff());
  return r;
}

}  // namespace spindirac
