#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "spindirac/cpn_domain.hpp"
#include "spindirac/polynomial.hpp"

namespace spindirac {

// Nodes with |F| below this are excluded from quadratures and reported.
inline constexpr double kLiftFloor = 1e-8;

// Lift data at one node: F, F_z, F_zbar, F_{z zbar} and the chart conformal factor.
struct LiftPoint {
  Eigen::VectorXcd F, Fz, Fzb, Fzzb;
  double omega = 0.0;
};
LiftPoint evaluate_lift(const HomogeneousMap& map, const Domain& domain, const DomainSample& s);

// u minus its component along F.
Eigen::VectorXcd project_perp(const Eigen::VectorXcd& u, const Eigen::VectorXcd& F);
// I(z1, z2, z3, z4, ...) = (-conj z2, conj z1, -conj z4, conj z3, ...)
Eigen::VectorXcd quaternionic_structure(const Eigen::VectorXcd& F);

// (|d Psi|_g^2, |dbar Psi|_g^2) for the target metric 4 g_FS.
std::pair<double, double> energy_densities(const HomogeneousMap& map, const Domain& domain,
                                           const DomainSample& s);

struct EnergyReport {
  double E10 = 0.0;
  double E01 = 0.0;
  int degree = 0;
  double degree_residual = 0.0;  // |E10 - E01 - 4 pi degree|
  int excluded_nodes = 0;
};
EnergyReport energies(const HomogeneousMap& map, const Domain& domain);

// L2(dv_g) norm of the harmonic-map residual pi(F_{z zbar}) - a pi(F_z) - b pi(F_zbar) measured in
// the target metric.
double harmonic_residual(const HomogeneousMap& map, const Domain& domain);

struct QuaternionicReport {
  double alignment = 0.0;      // max of 1 - |<u, I F>|/(|u||I F|), u = pi(F_zbar)
  double min_dbar_norm = 0.0;  // min of |dbar Psi|_g over the nodes
  bool degenerate = false;     // dbar Psi vanishes identically
  int near_zeros = 0;          // nodes where |dbar Psi|_g is below the zero tolerance
  std::vector<int> zero_windings;  // winding of the I(F) coefficient around isolated near-zeros
  bool even_orders = true;
};
QuaternionicReport quaternionic_check(const HomogeneousMap& map, const Domain& domain,
                                      double zero_tol = 1e-6);

struct InducedMetric {
  std::vector<double> ratio;  // |dbar Psi|_g^2 per node, the factor of g_Psi against g
  double min = 0.0;
  double max = 0.0;
  int zeros = 0;
};
InducedMetric induced_metric(const HomogeneousMap& map, const Domain& domain, double zero_tol = 1e-10);

// sup of 4 |<F_z, pi(F_zbar)>| / (e^{2 omega} |F|^2)
double weak_conformality(const HomogeneousMap& map, const Domain& domain);

struct IndexReport {
  int degree = 0;
  int predicted_index = 0;  // -chi(S^2) - 2 deg
  int near_zeros = 0;
};
IndexReport index_consistency(const HomogeneousMap& map, const Domain& domain, double zero_tol = 1e-6);

// j-th member of the Frenet frame of a holomorphic polynomial curve, by pointwise Gram-Schmidt on
// the z-derivatives.
HomogeneousMap frenet_frame(const PolyVector& phi, int j);

struct VeroneseData {
  int m = 1;
  PolyVector phi;        // (sqrt(C(2m-1, j)) z^j)_j
  Eigen::MatrixXcd A;    // unitary pairing matrix
  HomogeneousMap holomorphic;
  HomogeneousMap psi;    // A Phi_m
};
VeroneseData veronese(int m);

// Largest distance between the lines of two maps over the nodes: 1 - |<F, G>|/(|F||G|).
double line_distance(const HomogeneousMap& a, const HomogeneousMap& b, const Domain& domain);

// Chart-overlap consistency of the energy densities on the sphere: both charts evaluated at nodes
// within the band |cos theta| <= band.
double chart_overlap_residual(const HomogeneousMap& map, const Domain& domain, double band = 0.5);

}  // namespace spindirac
