#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spindirac/dirac_torus.hpp"
#include "spindirac/fourier_field.hpp"
#include "spindirac/lattice_spin.hpp"

namespace spindirac {

struct OptTraceEntry {
  int iteration = 0;
  double lambda1_bar = 0.0;
  double area = 0.0;
  double gradient_norm = 0.0;
  double variance = 0.0;
  double step = 0.0;
};

struct StepPolicy {
  double initial = 0.1;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  double grow = 2.0;  // next trial step after an accepted one; 1 keeps the step fixed
  double max_step = 50.0;
  int max_backtracks = 40;
};

struct OptOptions {
  int max_steps = 500;
  double tol = 1e-6;     // gradient norm
  double cutoff = 2.0;   // plane-wave radius |xi| <= cutoff
  int K1 = -1;           // descent window |n1| <= K1, |n2| <= K2; negative means omega0's band (>= 1)
  int K2 = -1;
  StepPolicy step;
};

enum class OptStatus { Converged, StepLimit, LineSearchStall };
const char* status_name(OptStatus s);

struct OptState {
  TorusGeometry geometry;
  FourierField omega;
  std::vector<OptTraceEntry> trace;  // entry 0 is the start, one entry per accepted step
  OptStatus status = OptStatus::StepLimit;
  int accepted = 0;
  double lambda1_bar = 0.0;
  double gradient_norm = 0.0;
  double variance = 0.0;
  double min_lambda1_bar = 0.0;  // smallest value among all evaluated iterates
  std::string message;
};

// Mean-zero density G with d(lambda1_bar)[omega_dot] = integral of omega_dot G dv0, projected
// onto the window modes. Throws ZeroEigenvalue when lambda_1 cannot be separated from the kernel.
FourierField gradient(const TorusGeometry& geometry, const FourierField& omega, double cutoff,
                      int K1 = -1, int K2 = -1);

// Adds the constant that makes the area of e^{2 omega} g0 equal b on the solver grid.
FourierField renormalize_area(const FourierField& omega, const TorusBasis& basis);

// Steepest descent on lambda1_bar with Armijo backtracking and area renormalization.
OptState minimize(const TorusGeometry& geometry, const FourierField& omega0, const OptOptions& options);

// Random smooth factor on the modes 0 < (n2, n1) lexicographically with |n1| <= K1, n2 <= K2:
// cosines with uniform amplitudes and phases, rescaled so the grid sup norm is amplitude * U[1/2, 1].
FourierField random_torus_factor(const TorusGeometry& geometry, double amplitude, int K1, int K2,
                                 std::uint64_t seed, std::uint64_t stream);

struct CriticalityReport {
  double residual = 0.0;           // sup-norm distance of sum c_j |psi_j|^2 from a constant, relative
  std::vector<double> combination; // convex weights over the eigenbasis of the lambda_1 cluster
  int multiplicity = 0;
  double level = 0.0;
};

// Best convex combination of lambda_1 eigenspinor densities |psi|_g^2 (scaled by the area, so a
// constant combination equals 1) measured in sup norm on the solver grid.
CriticalityReport criticality_residual(const TorusGeometry& geometry, const FourierField& omega,
                                       double cutoff = 2.0);

}  // namespace spindirac
