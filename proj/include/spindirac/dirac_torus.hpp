#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "spindirac/exact_spectrum.hpp"
#include "spindirac/fourier_field.hpp"
#include "spindirac/lattice_spin.hpp"
#include "spindirac/linalg.hpp"

namespace spindirac {

// Plane-wave basis e^{2 pi i xi.x}/sqrt(b) over the shifted dual lattice inside the cutoff.
struct TorusBasis {
  TorusGeometry geometry;
  double cutoff = 0.0;
  std::vector<ShiftedDualPoint> points;
  int n1min = 0, n1max = 0, n2min = 0, n2max = 0;

  int size() const { return static_cast<int>(points.size()); }
  int span1() const { return n1max - n1min; }
  int span2() const { return n2max - n2min; }
  int index_of(int n1, int n2) const;  // -1 when absent
  int partner_index(int k) const;      // index of -xi

  std::map<std::pair<int, int>, int> lookup;
};

TorusBasis make_torus_basis(const TorusGeometry& geometry, double cutoff);

// Spinor psi = (f_+ s0, g conj(s0)) with f_+ = sum plus_k e_k, g = sum minus_k e_k.
struct SpinorCoefficients {
  Eigen::VectorXcd plus;
  Eigen::VectorXcd minus;
  double eigenvalue = 0.0;
};

// Pencil (A, M): A flat Dirac in the plane-wave basis, M multiplication by e^omega.
// Unknowns are ordered (plus block, minus block).
struct DiscreteDirac {
  TorusBasis basis;
  Eigen::MatrixXcd A;
  Eigen::MatrixXcd M;
  Eigen::VectorXcd symbol;  // diagonal of the (plus, minus) block of A
  std::vector<std::string> warnings;
};

DiscreteDirac assemble_flat_dirac(const TorusGeometry& geometry, double cutoff);

struct QuadratureGrid {
  int Q1 = 0;
  int Q2 = 0;
  std::size_t size() const { return static_cast<std::size_t>(Q1) * static_cast<std::size_t>(Q2); }
};

// Oversampled grid resolving products of basis functions and the weight.
QuadratureGrid quadrature_grid(const FourierField& omega, const TorusBasis& basis);

// N x N matrix (h e_k', e_k) for grid samples h on the quadrature grid.
Eigen::MatrixXcd scalar_weight_matrix(const std::vector<double>& h, const QuadratureGrid& grid,
                                      const TorusBasis& basis);

// Multiplication by e^{s omega} on the full spinor space (block diagonal, 2N x 2N).
Eigen::MatrixXcd weight_matrix(const FourierField& omega, const TorusBasis& basis, double s,
                               std::vector<std::string>* warnings = nullptr);

DiscreteDirac assemble_conformal_dirac(const TorusGeometry& geometry, const FourierField& omega,
                                       double cutoff);

struct TorusSolution {
  TorusBasis basis;
  QuadratureGrid grid;
  Eigen::VectorXd eigenvalues;                // ascending, all 2N
  std::vector<SpinorCoefficients> spinors;    // same order; empty if not requested
  Eigen::MatrixXcd W;                         // scalar weight block
  std::vector<double> exp_omega;              // e^omega on the grid
  double area = 0.0;
  SpectrumReport report;
  std::vector<std::string> warnings;

  int first_positive() const;  // index of lambda_1
  Cluster lambda1_cluster(double rel_tol = 1e-9) const;
  double lambda1() const;
  double lambda1_bar() const;
};

TorusSolution solve_conformal(const TorusGeometry& geometry, const FourierField& omega, double cutoff,
                              bool want_vectors = true);

// Pencil solve through Cholesky whitening of the full 2N system (reference path).
EigenDecomposition solve_pencil(const DiscreteDirac& d);

// Grid values of f = sum c_k e^{2 pi i xi_k.t} sqrt(b)^{-1} times e^{-2 pi i eta.t} (the
// quasi-periodic phase is dropped; only moduli and products are used downstream).
std::vector<cplx> synthesize(const Eigen::VectorXcd& coeffs, const TorusBasis& basis,
                             const QuadratureGrid& grid);

// e^omega (|f_+|^2 + |g|^2) on the grid: density of |psi|^2_g dv_g against dv0.
std::vector<double> spinor_density(const TorusSolution& sol, const SpinorCoefficients& psi);

// -lambda * integral of omega_dot |psi|_g^2 dv_g by grid quadrature.
double eigenvalue_derivative(const TorusSolution& sol, const FourierField& direction,
                             const SpinorCoefficients& psi);

// [-lambda <omega_dot e^omega psi_i, psi_j>] over the cluster; its eigenvalues are the branch slopes.
Eigen::MatrixXcd perturbation_matrix(const TorusSolution& sol, const FourierField& direction,
                                     const Cluster& cluster);

// Exact flat eigenspinor supported on one frequency; sign selects +-2 pi |xi|.
SpinorCoefficients plane_wave_eigenspinor(const TorusBasis& basis, int k, int sign);

// (psi_+, psi_-) -> (conj psi_-, -conj psi_+) in coefficients.
SpinorCoefficients quaternionic_partner(const TorusBasis& basis, const SpinorCoefficients& psi);

// || A v - lambda M v || for a coefficient vector.
double eigen_residual(const DiscreteDirac& d, const SpinorCoefficients& psi);

}  // namespace spindirac
