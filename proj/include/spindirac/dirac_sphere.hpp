#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "spindirac/exact_spectrum.hpp"
#include "spindirac/linalg.hpp"
#include "spindirac/wigner.hpp"

namespace spindirac {

// Spin-weighted harmonics Y^s_{jm} = sqrt((2j+1)/4pi) d^j_{m,-s}(theta) e^{i m phi}, s = +-1/2.
// A spinor with frame components (u, v) = (sum p_k Y^{+1/2}_k, sum q_k Y^{-1/2}_k).
struct SphereIndex {
  int tj = 1;  // 2j
  int tm = 1;  // 2m
};

struct SphereBasis {
  int tjmax = 1;
  std::vector<SphereIndex> index;
  GaussLegendre rule;  // in cos(theta)
  std::vector<double> theta;
  int n_phi = 0;
  // table[s][node * size + k] = sqrt((2j+1)/4pi) d^j_{m,-s}(theta_node); s = 0 for +1/2, 1 for -1/2
  std::vector<double> table[2];

  int size() const { return static_cast<int>(index.size()); }
  double phi(int l) const;
};

// Quadrature: n_theta >= 2(jmax + L) + 2 and n_phi >= 2(2 jmax + 1); defaults add margin for
// the non-polynomial weight e^omega.
SphereBasis make_sphere_basis(int tjmax, int band, int n_theta = 0, int n_phi = 0);

// Real omega as real spherical harmonic coefficients up to band L, optionally rotated:
// value(x) = sum c_lm Y_lm(R^T x).
struct SphereConformalFactor {
  int band = 0;
  std::vector<double> coeffs;  // index l*l + l + m
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();

  static SphereConformalFactor zero(int band);
  double& coeff(int l, int m) { return coeffs[static_cast<std::size_t>(l * l + l + m)]; }
  double coeff(int l, int m) const { return coeffs[static_cast<std::size_t>(l * l + l + m)]; }
  double value(double theta, double phi) const;
  SphereConformalFactor rotated(const Eigen::Matrix3d& R) const;
};

struct SphereDirac {
  SphereBasis basis;
  Eigen::VectorXd diag;  // j + 1/2 per index
  Eigen::MatrixXcd A;    // [[0, D], [D, 0]]
};

SphereDirac assemble_round(int tjmax);

// Weight matrices (e^{s omega} Y^s_k', Y^s_k) for the two spin weights.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> sphere_weight_matrices(
    const SphereConformalFactor& omega, const SphereBasis& basis, double exponent = 1.0);

struct SphereSolution {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXcd vectors;  // columns (p; q), M-orthonormal; empty unless requested
  double area = 0.0;
  double orthonormality_residual = 0.0;
  SpectrumReport report;
  double lambda1() const;
  double lambda1_bar() const { return lambda1() * std::sqrt(area); }
};

SphereSolution solve_conformal_sphere(const SphereConformalFactor& omega, int tjmax,
                                      bool want_vectors = false);
SphereSolution solve_conformal_sphere(const SphereConformalFactor& omega, const SphereBasis& basis,
                                      bool want_vectors = false);

// Frame components (u, v) of a coefficient vector at (theta, phi).
std::pair<cplx, cplx> sphere_spinor_at(const SphereBasis& basis, const Eigen::VectorXcd& coeffs,
                                       double theta, double phi);

struct BarSample {
  double lambda1_bar = 0.0;
  double sup_omega = 0.0;
  double variance = 0.0;
  bool equality_case = false;  // omega numerically constant
  bool violation = false;
};

struct BarReport {
  int count = 0;
  int band = 0;
  double amplitude = 0.0;
  std::uint64_t seed = 0;
  int tjmax = 0;
  double tol = 0.0;
  int violations = 0;
  double min_value = 0.0;
  int argmin = -1;
  double reference = 0.0;  // 2 sqrt(pi)
  std::vector<BarSample> samples;
};

// Random band-limited factors: l = 1..band coefficients standard normal, rescaled so that the
// sup norm on the quadrature grid is amplitude * U(0,1]. Sample 0 is omega = 0 when include_zero.
SphereConformalFactor random_sphere_factor(int band, double sup_norm, std::uint64_t seed,
                                           std::uint64_t stream);
BarReport bar_sweep(int count, int band, double amplitude, std::uint64_t seed, int tjmax = 15,
                    double tol = 1e-6, bool include_zero = true);

}  // namespace spindirac
