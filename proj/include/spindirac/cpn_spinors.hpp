#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "spindirac/cpn_domain.hpp"
#include "spindirac/cpn_harmonic.hpp"
#include "spindirac/dirac_torus.hpp"

namespace spindirac {

// Local spinor psi = (f s0, g conj(s0)) with |s0|^2 = e^{-omega}, plus the chart conformal factor.
// The Dirac equation reads 2 e^{-omega} g_z = lambda f and -2 e^{-omega} f_zbar = lambda g.
struct SpinorJet {
  Jet f, g, omega;
};

struct SpinorField {
  std::string name;
  double lambda = 0.0;
  std::function<SpinorJet(int chart, double x, double y)> eval;
};

// Plane-wave expansion evaluated in physical coordinates, with omega from a Fourier field.
SpinorField torus_spinor_field(const TorusBasis& basis, const SpinorCoefficients& psi,
                               const FourierField& omega);

// Lift F = (f_1, conj g_1, ..., f_m, conj g_m).
HomogeneousMap map_from_fields(const std::vector<SpinorField>& fields, const std::string& name = "spinor_map");

// Map of torus eigenspinors sharing one eigenvalue. The grid of `domain` is screened for common zeros.
HomogeneousMap from_eigenspinors(const std::vector<SpinorCoefficients>& spinors, const TorusBasis& basis,
                                 const FourierField& omega, const Domain& domain);

// Relative residual of the first-order system F_zbar = (lambda e^omega / 2) I(F) over the nodes.
double eigenspinor_system_residual(const std::vector<SpinorField>& fields, const Domain& domain);

// For maps into CP^1 = S^2: largest |third coordinate| of the image, (|F1|^2 - |F2|^2)/|F|^2.
double great_circle_deviation(const HomogeneousMap& map, const Domain& domain);

// Line distances of the partner-spinor map to I(F) and to conj(I(F)).
struct PartnerLines {
  double to_I = 0.0;
  double to_conj_I = 0.0;
};
PartnerLines partner_line_residuals(const HomogeneousMap& map, const HomogeneousMap& partner,
                                    const Domain& domain);

// Eigenspinors recovered from a quaternionic map on the round sphere: F = h F_hat with
// |F|^2 = e^omega and <F_zbar, I F> > 0; eigenvalue lambda (m for the Veronese family).
std::vector<SpinorField> spinors_from_map(const HomogeneousMap& map, double lambda);

struct QTensorField {
  std::vector<Eigen::Matrix2d> Q;  // per node, chart coordinates
  double trace_residual = 0.0;     // max |e^{-2 omega} tr Q - lambda |psi|^2| / max(lambda |psi|^2)
  double symmetry_residual = 0.0;
  double eigen_residual = 0.0;
};
QTensorField energy_momentum(const SpinorField& field, const Domain& domain, double eigen_tol = 1e-6);

// max over nodes of |sum_j Q_j - (lambda/2) g| relative to (lambda/2) e^{2 omega}.
double global_criticality_residual(const std::vector<SpinorField>& fields, const Domain& domain);

// (max - min)/mean of sum_j |psi_j|^2 over the nodes.
double sum_of_squares_variation(const std::vector<SpinorField>& fields, const Domain& domain);

}  // namespace spindirac
