#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace spindirac {

// Lattice Z(1,0) + Z(a,b); unit cell area b.
struct LatticeBasis {
  double a = 0.0;
  double b = 1.0;
};

// Values of the spin character on (1,0) and (a,b), each 0 or 1.
struct SpinCharacter {
  int chi1 = 0;
  int chi2 = 0;
  bool trivial() const { return chi1 == 0 && chi2 == 0; }
};

struct DualVector {
  double u = 0.0;
  double v = 0.0;
  double norm2() const { return u * u + v * v; }
  double norm() const;
  double operator()(double x, double y) const { return u * x + v * y; }
};

struct TorusGeometry {
  LatticeBasis lattice;
  SpinCharacter character;
  DualVector dual1;  // gamma_1^*
  DualVector dual2;  // gamma_2^*

  static TorusGeometry make(double a, double b, int chi1 = 0, int chi2 = 0);
  double area() const { return lattice.b; }
  // Physical point of lattice coordinates (t1, t2): t1 (1,0) + t2 (a,b).
  std::pair<double, double> point(double t1, double t2) const;
  std::pair<double, double> lattice_coords(double x, double y) const;
  // Dual vector with coordinates (c1, c2) in the dual basis.
  DualVector dual(double c1, double c2) const;
};

std::pair<DualVector, DualVector> dual_basis(const LatticeBasis& lattice);

DualVector affine_shift(const TorusGeometry& geometry);

// Element of the shifted dual lattice: xi = (n1 + chi1/2) gamma_1^* + (n2 + chi2/2) gamma_2^*.
struct ShiftedDualPoint {
  int n1 = 0;
  int n2 = 0;
  DualVector xi;
  // Coordinates of xi in the dual basis.
  double c1(const TorusGeometry& g) const { return n1 + 0.5 * g.character.chi1; }
  double c2(const TorusGeometry& g) const { return n2 + 0.5 * g.character.chi2; }
};

inline constexpr std::size_t kDefaultEnumerationCap = 4'000'000;

std::vector<ShiftedDualPoint> enumerate_shifted_dual(const TorusGeometry& geometry, double radius,
                                                     std::size_t cap = kDefaultEnumerationCap);

struct ModuliCheck {
  bool ok = false;
  std::string diagnostic;
};

ModuliCheck validate_moduli(const TorusGeometry& geometry);

// Reduction of an arbitrary lattice to the fundamental domain |a| <= 1/2, a^2+b^2 >= 1
// (trivial character only). The returned lattice is conformally equivalent.
struct ModuliReduction {
  LatticeBasis lattice;
  double scale = 1.0;  // length scale factor between the input and the reduced lattice
};
ModuliReduction reduce_moduli(const TorusGeometry& geometry);

}  // namespace spindirac
