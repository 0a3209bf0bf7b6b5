#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace spindirac {

using cplx = std::complex<double>;

// Eigenpairs of A v = lambda M v: values ascending, columns M-orthonormal.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // empty when vectors were not requested
};

// Hermitian pencil (A, M) with M positive definite, by Cholesky whitening M = L L^*.
EigenDecomposition solve_generalized(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& M,
                                     bool want_vectors = true);

// Chiral pencil A = [[0, B], [B^*, 0]], M = diag(W+, W-). After whitening the off-diagonal
// block, eigenvalues are plus and minus the singular values, so only an N x N problem is solved.
EigenDecomposition solve_chiral(const Eigen::MatrixXcd& B, const Eigen::MatrixXcd& Wplus,
                                const Eigen::MatrixXcd& Wminus, bool want_vectors = true);

// Index ranges of clusters of nearly equal values in an ascending list.
struct Cluster {
  int begin = 0;
  int end = 0;  // exclusive
  double mean = 0.0;
  int size() const { return end - begin; }
};
std::vector<Cluster> cluster_values(const Eigen::VectorXd& sorted, double rel_tol,
                                    double abs_tol = 1e-10);

// Eigenvalues of a small Hermitian matrix, ascending.
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& H);

}  // namespace spindirac
