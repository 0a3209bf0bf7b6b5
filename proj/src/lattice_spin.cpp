#include "spindirac/lattice_spin.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <tuple>

#include "spindirac/errors.hpp"

namespace spindirac {

double DualVector::norm() const { return std::hypot(u, v); }

TorusGeometry TorusGeometry::make(double a, double b, int chi1, int chi2) {
  if ((chi1 != 0 && chi1 != 1) || (chi2 != 0 && chi2 != 1))
    throw Error(ErrorKind::InvalidInput, "spin character values must be 0 or 1");
  TorusGeometry g;
  g.lattice = {a, b};
  g.character = {chi1, chi2};
  std::tie(g.dual1, g.dual2) = dual_basis(g.lattice);
  return g;
}

std::pair<double, double> TorusGeometry::point(double t1, double t2) const {
  return {t1 + t2 * lattice.a, t2 * lattice.b};
}

std::pair<double, double> TorusGeometry::lattice_coords(double x, double y) const {
  const double t2 = y / lattice.b;
  return {x - lattice.a * t2, t2};
}

DualVector TorusGeometry::dual(double c1, double c2) const {
  return {c1 * dual1.u + c2 * dual2.u, c1 * dual1.v + c2 * dual2.v};
}

std::pair<DualVector, DualVector> dual_basis(const LatticeBasis& lattice) {
  if (!(lattice.b > 0.0) || !std::isfinite(lattice.b) || !std::isfinite(lattice.a)) {
    std::ostringstream os;
    os << "lattice (a=" << lattice.a << ", b=" << lattice.b << ") requires finite b > 0";
    throw Error(ErrorKind::DegenerateLattice, os.str());
  }
  // gamma_1^* = (1, -a/b), gamma_2^* = (0, 1/b)
  return {DualVector{1.0, -lattice.a / lattice.b}, DualVector{0.0, 1.0 / lattice.b}};
}

DualVector affine_shift(const TorusGeometry& g) {
  return g.dual(0.5 * g.character.chi1, 0.5 * g.character.chi2);
}

std::vector<ShiftedDualPoint> enumerate_shifted_dual(const TorusGeometry& g, double radius,
                                                     std::size_t cap) {
  if (!(radius >= 0.0)) throw Error(ErrorKind::InvalidInput, "radius must be non-negative");
  // |c| <= |xi| * sqrt(||G||) where G is the Gram matrix of (1,0), (a,b); G = (G*)^{-1}.
  const double a = g.lattice.a, b = g.lattice.b;
  const double g11 = 1.0, g12 = a, g22 = a * a + b * b;
  const double tr = g11 + g22, det = g11 * g22 - g12 * g12;
  const double lmax = 0.5 * (tr + std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
  const double cmax = radius * std::sqrt(lmax);
  const long box = static_cast<long>(std::ceil(cmax)) + 1;
  const double box_count = std::pow(2.0 * static_cast<double>(box) + 1.0, 2);
  // Disc area over dual cell area (1/b); the box may be much larger for skew lattices.
  const double estimate = 3.2 * radius * radius * b + 16.0;
  if (estimate > static_cast<double>(cap) || box_count > 64.0 * static_cast<double>(cap)) {
    std::ostringstream os;
    os << "radius " << radius << " would enumerate about " << static_cast<long long>(estimate)
       << " dual vectors (cap " << cap << ")";
    throw Error(ErrorKind::RadiusTooLarge, os.str());
  }
  const double r2 = radius * radius * (1.0 + 1e-14) + 1e-300;
  std::vector<ShiftedDualPoint> out;
  for (long n1 = -box; n1 <= box; ++n1) {
    for (long n2 = -box; n2 <= box; ++n2) {
      ShiftedDualPoint p;
      p.n1 = static_cast<int>(n1);
      p.n2 = static_cast<int>(n2);
      p.xi = g.dual(p.c1(g), p.c2(g));
      if (p.xi.norm2() <= r2) out.push_back(p);
    }
  }
  if (out.size() > cap) throw Error(ErrorKind::RadiusTooLarge, "enumeration exceeded element cap");
  std::sort(out.begin(), out.end(), [](const ShiftedDualPoint& x, const ShiftedDualPoint& y) {
    return x.xi.norm2() < y.xi.norm2();
  });
  // Lexicographic order inside groups of equal norm (ties up to rounding).
  std::size_t start = 0;
  while (start < out.size()) {
    std::size_t end = start + 1;
    const double ref = out[start].xi.norm2();
    while (end < out.size() && out[end].xi.norm2() - ref <= 1e-12 * (1.0 + ref)) ++end;
    std::sort(out.begin() + static_cast<long>(start), out.begin() + static_cast<long>(end),
              [](const ShiftedDualPoint& x, const ShiftedDualPoint& y) {
                if (x.xi.u != y.xi.u) return x.xi.u < y.xi.u;
                return x.xi.v < y.xi.v;
              });
    start = end;
  }
  return out;
}

ModuliCheck validate_moduli(const TorusGeometry& g) {
  constexpr double tol = 1e-12;
  const double a = g.lattice.a, b = g.lattice.b;
  ModuliCheck r;
  if (!(b > 0.0)) {
    r.diagnostic = "b > 0 violated";
    return r;
  }
  if (std::abs(a) > 0.5 + tol) {
    r.diagnostic = "|a| <= 1/2 violated";
    return r;
  }
  if (g.character.trivial()) {
    if (a * a + b * b < 1.0 - tol) {
      r.diagnostic = "a^2 + b^2 >= 1 violated";
      return r;
    }
  } else {
    if (!(g.character.chi1 == 0 && g.character.chi2 == 1)) {
      r.diagnostic = "non-trivial character must be normalized as chi(1,0)=0, chi(a,b)=1";
      return r;
    }
    const double t = std::abs(a) - 0.5;
    if (b * b + t * t < 0.25 - tol) {
      r.diagnostic = "b^2 + (|a| - 1/2)^2 >= 1/4 violated";
      return r;
    }
  }
  r.ok = true;
  r.diagnostic = "inside fundamental domain";
  return r;
}

ModuliReduction reduce_moduli(const TorusGeometry& g) {
  if (!g.character.trivial())
    throw Error(ErrorKind::InvalidInput,
                "moduli reduction is only implemented for the trivial character");
  if (!(g.lattice.b > 0.0)) throw Error(ErrorKind::DegenerateLattice, "b must be positive");
  std::complex<double> tau(g.lattice.a, g.lattice.b);
  double scale = 1.0;
  for (int iter = 0; iter < 1000; ++iter) {
    tau -= std::round(tau.real());
    if (std::norm(tau) < 1.0 - 1e-14) {
      // basis (1, tau) -> (tau, -1), then rescale by 1/tau
      scale /= std::abs(tau);
      tau = -1.0 / tau;
      continue;
    }
    break;
  }
  if (tau.real() < -0.5) tau += 1.0;
  return {{tau.real(), tau.imag()}, scale};
}

}  // namespace spindirac
