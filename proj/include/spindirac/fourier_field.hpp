#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "spindirac/lattice_spin.hpp"

namespace spindirac {

using cplx = std::complex<double>;

// In-place 2D DFT of an n1 x n2 row-major array (index i*n2 + j).
// forward: X(k) = sum_x x e^{-2 pi i k.x/n}; backward: no normalization either.
void fft2(std::vector<cplx>& data, int n1, int n2, bool forward);

// Real field on the torus, omega(t) = sum_n c(n) e^{2 pi i (n1 t1 + n2 t2)} in lattice
// coordinates t; the frequency n1 gamma_1^* + n2 gamma_2^* pairs with (x, y) accordingly.
struct FourierField {
  TorusGeometry geometry;
  std::map<std::pair<int, int>, cplx> coeffs;
  int N1 = 16;  // sampling resolution
  int N2 = 16;

  static FourierField zero(const TorusGeometry& g, int N1 = 16, int N2 = 16);
  static FourierField constant(const TorusGeometry& g, double c, int N1 = 16, int N2 = 16);

  FourierField& add_constant(double c);
  // amplitude * cos(2 pi (n1 t1 + n2 t2) + phase)
  FourierField& add_cosine(int n1, int n2, double amplitude, double phase = 0.0);
  FourierField& add_coefficient(int n1, int n2, cplx c);  // also adds the conjugate partner

  double value(double t1, double t2) const;
  double value_at(double x, double y) const;
  // Values on the Q1 x Q2 lattice-coordinate grid t = (i/Q1, j/Q2), row-major.
  std::vector<double> sample(int Q1, int Q2) const;
  double mean() const;
  int max_index1() const;
  int max_index2() const;
  bool hermitian(double tol = 1e-12) const;
  // Sample-based variance over the grid N1 x N2 (flat measure).
  double variance(int Q1, int Q2) const;

  FourierField operator+(const FourierField& o) const;
  FourierField operator*(double s) const;
  // Drop modes below a magnitude threshold.
  void prune(double tol = 0.0);

  // L2(dv0) inner product b * sum_n conj(c_n) d_n.
  double inner(const FourierField& o) const;

  // Projection of sampled grid data onto the modes |n1| <= K1, |n2| <= K2.
  static FourierField from_samples(const TorusGeometry& g, const std::vector<double>& samples,
                                   int Q1, int Q2, int K1, int K2);
};

}  // namespace spindirac
