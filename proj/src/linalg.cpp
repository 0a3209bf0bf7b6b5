#include "spindirac/linalg.hpp"

#include <cmath>
#include <sstream>

#include "spindirac/errors.hpp"

namespace spindirac {

namespace {

Eigen::MatrixXcd cholesky_factor(const Eigen::MatrixXcd& M, const char* label) {
  Eigen::LLT<Eigen::MatrixXcd> llt(M);
  if (llt.info() != Eigen::Success) {
    const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(M).eigenvalues();
    std::ostringstream os;
    os << "Cholesky factorization of " << label << " failed; eigenvalue range [" << ev.minCoeff()
       << ", " << ev.maxCoeff() << "]";
    throw Error(ErrorKind::SolverFailure, os.str());
  }
  Eigen::MatrixXcd L = llt.matrixL();
  const Eigen::VectorXd d = L.diagonal().real();
  if (d.minCoeff() <= 1e-14 * d.maxCoeff()) {
    std::ostringstream os;
    os << label << " is numerically singular (Cholesky diagonal ratio " << d.minCoeff() / d.maxCoeff()
       << ")";
    throw Error(ErrorKind::SolverFailure, os.str());
  }
  return L;
}

Eigen::MatrixXcd lower_inverse(const Eigen::MatrixXcd& L) {
  Eigen::MatrixXcd inv = Eigen::MatrixXcd::Identity(L.rows(), L.cols());
  L.triangularView<Eigen::Lower>().solveInPlace(inv);
  return inv;
}

}  // namespace

EigenDecomposition solve_generalized(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& M,
                                     bool want_vectors) {
  if (A.rows() != M.rows() || A.rows() != A.cols() || M.rows() != M.cols())
    throw Error(ErrorKind::InvalidInput, "pencil dimensions do not match");
  const Eigen::MatrixXcd L = cholesky_factor(M, "weight matrix");
  const Eigen::MatrixXcd Li = lower_inverse(L);
  Eigen::MatrixXcd H = Li * A * Li.adjoint();
  H = 0.5 * (H + H.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      H, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw Error(ErrorKind::SolverFailure, "Hermitian eigensolver failed");
  EigenDecomposition out;
  out.values = es.eigenvalues();
  if (want_vectors) out.vectors = Li.adjoint() * es.eigenvectors();
  return out;
}

EigenDecomposition solve_chiral(const Eigen::MatrixXcd& B, const Eigen::MatrixXcd& Wplus,
                                const Eigen::MatrixXcd& Wminus, bool want_vectors) {
  const Eigen::Index n = B.rows();
  if (B.cols() != n || Wplus.rows() != n || Wminus.rows() != n)
    throw Error(ErrorKind::InvalidInput, "chiral pencil dimensions do not match");
  const Eigen::MatrixXcd Lp = cholesky_factor(Wplus, "weight matrix (+)");
  const Eigen::MatrixXcd Lpi = lower_inverse(Lp);
  Eigen::MatrixXcd Lmi;
  const bool same = (&Wplus == &Wminus) || Wplus.isApprox(Wminus, 0.0);
  if (same)
    Lmi = Lpi;
  else
    Lmi = lower_inverse(cholesky_factor(Wminus, "weight matrix (-)"));
  const Eigen::MatrixXcd C = Lpi * B * Lmi.adjoint();

  const unsigned opts = want_vectors ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : 0u;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(C, opts);
  const Eigen::VectorXd s = svd.singularValues();  // descending

  EigenDecomposition out;
  out.values.resize(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = -s(i);
    out.values(2 * n - 1 - i) = s(i);
  }
  if (want_vectors) {
    const Eigen::MatrixXcd P = Lpi.adjoint() * svd.matrixU();
    const Eigen::MatrixXcd Q = Lmi.adjoint() * svd.matrixV();
    const double r = 1.0 / std::sqrt(2.0);
    out.vectors.resize(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < n; ++i) {
      out.vectors.col(i) << r * P.col(i), -r * Q.col(i);
      out.vectors.col(2 * n - 1 - i) << r * P.col(i), r * Q.col(i);
    }
  }
  return out;
}

std::vector<Cluster> cluster_values(const Eigen::VectorXd& v, double rel_tol, double abs_tol) {
  std::vector<Cluster> out;
  int i = 0;
  const int n = static_cast<int>(v.size());
  while (i < n) {
    int j = i + 1;
    while (j < n && v(j) - v(j - 1) <= rel_tol * std::abs(v(j - 1)) + abs_tol) ++j;
    Cluster c{i, j, v.segment(i, j - i).mean()};
    out.push_back(c);
    i = j;
  }
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H) {
  const Eigen::MatrixXcd S = 0.5 * (H + H.adjoint());
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(S, Eigen::EigenvaluesOnly).eigenvalues();
}

}  // namespace spindirac
