#pragma once

#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "spindirac/jet.hpp"

namespace spindirac {

// Polynomial in z and z-bar: sum c_{pq} z^p conj(z)^q.
struct Polynomial {
  std::map<std::pair<int, int>, cplx> terms;

  static Polynomial monomial(int p, int q, cplx c = 1.0);
  static Polynomial constant(cplx c) { return monomial(0, 0, c); }

  bool zero() const;
  int degree_z() const;
  int degree_zbar() const;
  bool holomorphic() const { return degree_zbar() <= 0; }

  cplx operator()(cplx z) const;
  Jet operator()(const Jet& z) const;  // z must be a coordinate jet
  Polynomial dz() const;
  Polynomial dzbar() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(cplx s) const;
};

using PolyVector = std::vector<Polynomial>;

// Lift in the chart w = 1/z: w^P conj(w)^Q F(1/w) with the smallest P, Q clearing denominators.
PolyVector chart_one_form(const PolyVector& F);

}  // namespace spindirac
