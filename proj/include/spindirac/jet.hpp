#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace spindirac {

using cplx = std::complex<double>;

// Complex value with first and second partial derivatives in real chart coordinates (x, y).
struct Jet {
  cplx v{}, x{}, y{}, xx{}, xy{}, yy{};

  Jet() = default;
  Jet(cplx value) : v(value) {}  // NOLINT: constants promote implicitly
  Jet(double value) : v(value) {}

  static Jet coordinate_x(double x0) { Jet j(x0); j.x = 1.0; return j; }
  static Jet coordinate_y(double y0) { Jet j(y0); j.y = 1.0; return j; }
  // z = x + i y
  static Jet coordinate_z(cplx z0) {
    Jet j(z0);
    j.x = 1.0;
    j.y = cplx(0.0, 1.0);
    return j;
  }

  cplx dz() const { return 0.5 * (x - cplx(0, 1) * y); }
  cplx dzb() const { return 0.5 * (x + cplx(0, 1) * y); }
  cplx dzdzb() const { return 0.25 * (xx + yy); }
  cplx dzdz() const { return 0.25 * (xx - 2.0 * cplx(0, 1) * xy - yy); }
  cplx dzbdzb() const { return 0.25 * (xx + 2.0 * cplx(0, 1) * xy - yy); }

  Jet& operator+=(const Jet& o) {
    v += o.v; x += o.x; y += o.y; xx += o.xx; xy += o.xy; yy += o.yy;
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v; x -= o.x; y -= o.y; xx -= o.xx; xy -= o.xy; yy -= o.yy;
    return *this;
  }
  Jet& operator*=(cplx s) {
    v *= s; x *= s; y *= s; xx *= s; xy *= s; yy *= s;
    return *this;
  }
};

inline Jet operator+(Jet a, const Jet& b) { return a += b; }
inline Jet operator-(Jet a, const Jet& b) { return a -= b; }
inline Jet operator-(Jet a) { a *= -1.0; return a; }
inline Jet operator*(Jet a, cplx s) { return a *= s; }
inline Jet operator*(cplx s, Jet a) { return a *= s; }
inline Jet operator*(Jet a, double s) { return a *= s; }
inline Jet operator*(double s, Jet a) { return a *= s; }

inline Jet operator*(const Jet& a, const Jet& b) {
  Jet r;
  r.v = a.v * b.v;
  r.x = a.x * b.v + a.v * b.x;
  r.y = a.y * b.v + a.v * b.y;
  r.xx = a.xx * b.v + 2.0 * a.x * b.x + a.v * b.xx;
  r.xy = a.xy * b.v + a.x * b.y + a.y * b.x + a.v * b.xy;
  r.yy = a.yy * b.v + 2.0 * a.y * b.y + a.v * b.yy;
  return r;
}

// phi(a) for a holomorphic phi given phi(v), phi'(v), phi''(v).
inline Jet compose(const Jet& a, cplx f0, cplx f1, cplx f2) {
  Jet r;
  r.v = f0;
  r.x = f1 * a.x;
  r.y = f1 * a.y;
  r.xx = f2 * a.x * a.x + f1 * a.xx;
  r.xy = f2 * a.x * a.y + f1 * a.xy;
  r.yy = f2 * a.y * a.y + f1 * a.yy;
  return r;
}

inline Jet inverse(const Jet& a) {
  const cplx i = 1.0 / a.v;
  return compose(a, i, -i * i, 2.0 * i * i * i);
}
inline Jet operator/(const Jet& a, const Jet& b) { return a * inverse(b); }
inline Jet operator/(Jet a, cplx s) { return a *= 1.0 / s; }
inline Jet operator/(Jet a, double s) { return a *= 1.0 / s; }

inline Jet conj(const Jet& a) {
  Jet r;
  r.v = std::conj(a.v); r.x = std::conj(a.x); r.y = std::conj(a.y);
  r.xx = std::conj(a.xx); r.xy = std::conj(a.xy); r.yy = std::conj(a.yy);
  return r;
}

inline Jet exp(const Jet& a) {
  const cplx e = std::exp(a.v);
  return compose(a, e, e, e);
}
inline Jet log(const Jet& a) { return compose(a, std::log(a.v), 1.0 / a.v, -1.0 / (a.v * a.v)); }
inline Jet sqrt(const Jet& a) {
  const cplx s = std::sqrt(a.v);
  return compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

// Real part taken componentwise (derivatives of a real field).
inline Jet real(const Jet& a) { return 0.5 * (a + conj(a)); }

// Jet of the z-bar derivative, valid to first order only (second-order entries are NaN).
inline Jet dzb_jet(const Jet& a) {
  const cplx I(0, 1);
  Jet r;
  r.v = a.dzb();
  r.x = 0.5 * (a.xx + I * a.xy);
  r.y = 0.5 * (a.xy + I * a.yy);
  r.xx = r.xy = r.yy = cplx(NAN, NAN);
  return r;
}
inline Jet dz_jet(const Jet& a) {
  const cplx I(0, 1);
  Jet r;
  r.v = a.dz();
  r.x = 0.5 * (a.xx - I * a.xy);
  r.y = 0.5 * (a.xy - I * a.yy);
  r.xx = r.xy = r.yy = cplx(NAN, NAN);
  return r;
}

using JetVector = std::vector<Jet>;

// Hermitian product sum a_k conj(b_k) and squared norm, as jets.
inline Jet hdot(const JetVector& a, const JetVector& b) {
  Jet s;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * conj(b[k]);
  return s;
}
inline Jet hnorm2(const JetVector& a) { return hdot(a, a); }

}  // namespace spindirac
