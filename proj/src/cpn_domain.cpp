#include "spindirac/cpn_domain.hpp"

#include <cmath>
#include <numbers>

#include "spindirac/errors.hpp"
#include "spindirac/wigner.hpp"

namespace spindirac {

namespace {
constexpr double kPi = std::numbers::pi;
}

Jet fourier_jet(const FourierField& field, double x, double y) {
  Jet s;
  for (const auto& [n, c] : field.coeffs) {
    const DualVector k = field.geometry.dual(n.first, n.second);
    const cplx ix(0.0, 2.0 * kPi * k.u), iy(0.0, 2.0 * kPi * k.v);
    const cplx e = c * std::exp(ix * x + iy * y);
    Jet t(e);
    t.x = ix * e;
    t.y = iy * e;
    t.xx = ix * ix * e;
    t.xy = ix * iy * e;
    t.yy = iy * iy * e;
    s += t;
  }
  return real(s);
}

Jet round_sphere_omega(double x, double y) {
  const Jet z = Jet::coordinate_z(cplx(x, y));
  return real(std::log(2.0) - log(Jet(1.0) + z * conj(z)));
}

Jet Domain::omega_jet(int, double x, double y) const {
  switch (kind) {
    case DomainKind::Sphere: return round_sphere_omega(x, y);
    case DomainKind::Torus: return fourier_jet(omega, x, y);
    case DomainKind::Patch: return Jet(0.0);
  }
  return Jet(0.0);
}

double Domain::area() const {
  double a = 0.0;
  for (const auto& s : samples) a += s.weight;
  return a;
}

Domain sphere_domain(int n_theta, int n_phi) {
  if (n_theta < 2 || n_phi < 3) throw Error(ErrorKind::InvalidInput, "sphere grid too small");
  Domain d;
  d.kind = DomainKind::Sphere;
  const auto gl = gauss_legendre(n_theta);
  for (int k = 0; k < n_theta; ++k) {
    const double theta = std::acos(gl.nodes[k]);
    for (int l = 0; l < n_phi; ++l) {
      // half-cell azimuthal offset keeps nodes off the chart boundaries' symmetry lines
      const double phi = 2.0 * kPi * (l + 0.5) / n_phi;
      DomainSample s;
      s.weight = gl.weights[k] * 2.0 * kPi / n_phi;
      const double r = std::tan(0.5 * theta);  // |w|, and 1/|z|
      if (theta >= 0.5 * kPi) {
        const double rz = 1.0 / r;
        s.chart = 0;
        s.x = rz * std::cos(phi);
        s.y = rz * std::sin(phi);
      } else {
        s.chart = 1;
        s.x = r * std::cos(phi);
        s.y = -r * std::sin(phi);
      }
      d.samples.push_back(s);
    }
  }
  return d;
}

Domain torus_domain(const TorusGeometry& g, const FourierField& omega, int Q1, int Q2) {
  if (Q1 < 2 || Q2 < 2) throw Error(ErrorKind::InvalidInput, "torus grid too small");
  Domain d;
  d.kind = DomainKind::Torus;
  d.torus = g;
  d.omega = omega;
  const auto w = omega.sample(Q1, Q2);
  const double cell = g.area() / (static_cast<double>(Q1) * Q2);
  for (int i = 0; i < Q1; ++i)
    for (int j = 0; j < Q2; ++j) {
      const auto [x, y] = g.point(static_cast<double>(i) / Q1, static_cast<double>(j) / Q2);
      DomainSample s;
      s.x = x;
      s.y = y;
      s.weight = cell * std::exp(2.0 * w[static_cast<std::size_t>(i) * Q2 + j]);
      d.samples.push_back(s);
    }
  return d;
}

Domain patch_domain(double half_width, int n) {
  if (n < 2 || !(half_width > 0.0)) throw Error(ErrorKind::InvalidInput, "invalid patch");
  Domain d;
  d.kind = DomainKind::Patch;
  const auto gl = gauss_legendre(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      DomainSample s;
      s.x = half_width * gl.nodes[i];
      s.y = half_width * gl.nodes[j];
      s.weight = half_width * half_width * gl.weights[i] * gl.weights[j];
      d.samples.push_back(s);
    }
  return d;
}

std::pair<double, double> other_chart(double x, double y) {
  const cplx w = 1.0 / cplx(x, y);
  return {w.real(), w.imag()};
}

HomogeneousMap polynomial_map(const PolyVector& F, const std::string& name) {
  if (F.size() < 2) throw Error(ErrorKind::InvalidInput, "a map into CP^n needs at least two components");
  HomogeneousMap m;
  m.n = static_cast<int>(F.size()) - 1;
  m.name = name;
  const PolyVector F1 = chart_one_form(F);
  m.lift = [F, F1](int chart, double x, double y) {
    const Jet z = Jet::coordinate_z(cplx(x, y));
    const PolyVector& P = chart == 0 ? F : F1;
    JetVector out;
    out.reserve(P.size());
    for (const auto& p : P) out.push_back(p(z));
    return out;
  };
  return m;
}

HomogeneousMap gauged(const HomogeneousMap& map, std::function<Jet(int, double, double)> h) {
  HomogeneousMap m = map;
  m.name = map.name + " (gauged)";
  auto inner = map.lift;
  m.lift = [inner, h](int chart, double x, double y) {
    JetVector F = inner(chart, x, y);
    const Jet s = h(chart, x, y);
    for (auto& c : F) c = s * c;
    return F;
  };
  return m;
}

HomogeneousMap transformed(const Eigen::MatrixXcd& A, const HomogeneousMap& map) {
  if (A.rows() != map.n + 1 || A.cols() != map.n + 1)
    throw Error(ErrorKind::InvalidInput, "transformation size does not match the target dimension");
  HomogeneousMap m = map;
  auto inner = map.lift;
  m.lift = [inner, A](int chart, double x, double y) {
    const JetVector F = inner(chart, x, y);
    JetVector out(F.size());
    for (int i = 0; i < A.rows(); ++i)
      for (int j = 0; j < A.cols(); ++j)
        if (A(i, j) != 0.0) out[static_cast<std::size_t>(i)] += A(i, j) * F[static_cast<std::size_t>(j)];
    return out;
  };
  return m;
}

}  // namespace spindirac
