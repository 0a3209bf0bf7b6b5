#include "spindirac/polynomial.hpp"

#include <algorithm>

namespace spindirac {

Polynomial Polynomial::monomial(int p, int q, cplx c) {
  Polynomial r;
  if (c != 0.0) r.terms[{p, q}] = c;
  return r;
}

bool Polynomial::zero() const {
  return std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.second == 0.0; });
}

int Polynomial::degree_z() const {
  int d = -1;
  for (const auto& [k, c] : terms)
    if (c != 0.0) d = std::max(d, k.first);
  return d;
}

int Polynomial::degree_zbar() const {
  int d = -1;
  for (const auto& [k, c] : terms)
    if (c != 0.0) d = std::max(d, k.second);
  return d;
}

cplx Polynomial::operator()(cplx z) const {
  cplx s = 0.0;
  for (const auto& [k, c] : terms) s += c * std::pow(z, k.first) * std::pow(std::conj(z), k.second);
  return s;
}

Jet Polynomial::operator()(const Jet& z) const {
  const int P = std::max(degree_z(), 0), Q = std::max(degree_zbar(), 0);
  std::vector<Jet> zp(static_cast<std::size_t>(P + 1)), zq(static_cast<std::size_t>(Q + 1));
  zp[0] = Jet(1.0);
  zq[0] = Jet(1.0);
  const Jet zb = conj(z);
  for (int i = 1; i <= P; ++i) zp[i] = zp[i - 1] * z;
  for (int i = 1; i <= Q; ++i) zq[i] = zq[i - 1] * zb;
  Jet s;
  for (const auto& [k, c] : terms) s += c * (zp[k.first] * zq[k.second]);
  return s;
}

Polynomial Polynomial::dz() const {
  Polynomial r;
  for (const auto& [k, c] : terms)
    if (k.first > 0) r.terms[{k.first - 1, k.second}] += c * static_cast<double>(k.first);
  return r;
}

Polynomial Polynomial::dzbar() const {
  Polynomial r;
  for (const auto& [k, c] : terms)
    if (k.second > 0) r.terms[{k.first, k.second - 1}] += c * static_cast<double>(k.second);
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  for (const auto& [k, c] : o.terms) r.terms[k] += c;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * -1.0; }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial r;
  for (const auto& [k1, c1] : terms)
    for (const auto& [k2, c2] : o.terms) r.terms[{k1.first + k2.first, k1.second + k2.second}] += c1 * c2;
  return r;
}

Polynomial Polynomial::operator*(cplx s) const {
  Polynomial r = *this;
  for (auto& [k, c] : r.terms) c *= s;
  return r;
}

PolyVector chart_one_form(const PolyVector& F) {
  int P = 0, Q = 0;
  for (const auto& p : F) {
    P = std::max(P, p.degree_z());
    Q = std::max(Q, p.degree_zbar());
  }
  PolyVector out;
  out.reserve(F.size());
  for (const auto& p : F) {
    Polynomial r;
    for (const auto& [k, c] : p.terms) r.terms[{P - k.first, Q - k.second}] += c;
    out.push_back(r);
  }
  return out;
}

}  // namespace spindirac
