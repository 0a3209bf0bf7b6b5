#pragma once

#include <vector>

namespace spindirac {

// Half-integer quantities are passed doubled: tj = 2j, tm = 2m, ts = 2s.

// d^j_{m s}(theta) for j = j0, j0+1, ..., jmax where j0 = max(|m|, |s|), by the three-term
// recurrence in j started from the single-term closed form at j0. Entry i is j = j0 + i.
std::vector<double> wigner_d_column(int tm, int ts, int tjmax, double theta);

// Single value (uses the column recurrence).
double wigner_d(int tj, int tm, int ts, double theta);

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendre gauss_legendre(int n);

// Orthonormal real spherical harmonic: l, m integers, |m| <= l.
// m > 0: sqrt2 N d^l_{m0} cos(m phi); m < 0: sqrt2 N d^l_{|m|0} sin(|m| phi); N = sqrt((2l+1)/4pi).
double real_spherical_harmonic(int l, int m, double theta, double phi);

}  // namespace spindirac
