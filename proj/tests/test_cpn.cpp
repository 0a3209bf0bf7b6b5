#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spindirac/cpn_domain.hpp"
#include "spindirac/cpn_harmonic.hpp"
#include "spindirac/cpn_spinors.hpp"
#include "spindirac/dirac_torus.hpp"
#include "spindirac/errors.hpp"
#include "spindirac/polynomial.hpp"
#include "spindirac/rng.hpp"

using namespace spindirac;
using std::numbers::pi;

namespace {

const cplx I(0, 1);

Polynomial z(int p = 1) { return Polynomial::monomial(p, 0); }
Polynomial zb(int q = 1) { return Polynomial::monomial(0, q); }
Polynomial one() { return Polynomial::constant(1.0); }

// Smooth nonvanishing scalar field on either chart.
Jet gauge(int chart, double x, double y) {
  const Jet X = Jet::coordinate_x(x), Y = Jet::coordinate_y(y);
  const Jet r2 = X * X + Y * Y;
  const double s = chart == 0 ? 1.0 : -0.7;
  return exp(Jet(cplx(0.3, 0.1)) * X * s - Jet(cplx(0.0, 0.2)) * Y + 0.4 * r2 / (Jet(1.0) + r2) + Jet(cplx(0.2, -1.0)));
}

// Circle map [e^{2 pi i gamma(x, y)} : 1] on a torus.
HomogeneousMap circle_map(const DualVector& gamma) {
  HomogeneousMap m;
  m.n = 1;
  m.name = "circle";
  m.lift = [gamma](int, double x, double y) {
    const Jet ph = 2 * pi * I * (gamma.u * Jet::coordinate_x(x) + gamma.v * Jet::coordinate_y(y));
    return JetVector{exp(ph), Jet(1.0)};
  };
  return m;
}

struct Scalars {
  double E10, E01, residual, conformality, metric_min, metric_max;
};

Scalars scalars(const HomogeneousMap& m, const Domain& d) {
  const auto e = energies(m, d);
  const auto im = induced_metric(m, d);
  return {e.E10, e.E01, harmonic_residual(m, d), weak_conformality(m, d), im.min, im.max};
}

}  // namespace

TEST_CASE("energy densities of simple sphere maps") {
  const auto sphere = sphere_domain();
  const auto anti = polynomial_map({zb(), one()});
  for (std::size_t i = 0; i < sphere.samples.size(); i += 37) {
    const auto [d10, d01] = energy_densities(anti, sphere, sphere.samples[i]);
    CHECK(std::abs(d10) < 1e-12);
    CHECK(std::abs(d01 - 1.0) < 1e-12);
  }
  const auto v2 = veronese(2);
  for (std::size_t i = 0; i < sphere.samples.size(); i += 37) {
    const auto [d10, d01] = energy_densities(v2.psi, sphere, sphere.samples[i]);
    CHECK(std::abs(d01 - 4.0) < 1e-10);
    // degree -1, so E10 = E01 - 4 pi and the density is 3 by symmetry
    CHECK(std::abs(d10 - 3.0) < 1e-10);
  }
  // a lift vanishing at the origin of chart 0
  const auto bad = polynomial_map({z(), z()});
  DomainSample s{0, 0.0, 0.0, 1.0};
  CHECK_THROWS_AS(energy_densities(bad, sphere, s), Error);
}

TEST_CASE("energies and degrees of sphere maps") {
  const auto sphere = sphere_domain();
  auto e = energies(polynomial_map({zb(), one()}), sphere);
  CHECK(e.degree == -1);
  CHECK(std::abs(e.E01 - 4 * pi) < 1e-10);
  CHECK(std::abs(e.E10) < 1e-10);

  struct Case {
    PolyVector F;
    int degree;
  };
  const std::vector<Case> cases = {
      {{z(), one()}, 1},
      {{z(2), one()}, 2},
      {{zb(3), one()}, -3},
      {{one(), z(), z(2)}, 2},
      {{z(2) * 3.0 + one(), z() * 2.0 - one()}, 2},
  };
  for (const auto& c : cases) {
    const auto r = energies(polynomial_map(c.F), sphere);
    CHECK(r.degree == c.degree);
    CHECK(r.degree_residual < 1e-6);
    CHECK(r.E10 >= 0);
    CHECK(r.E01 >= 0);
  }
}

TEST_CASE("harmonic residual separates harmonic and non-harmonic maps") {
  const auto sphere = sphere_domain();
  for (int m = 1; m <= 3; ++m) CHECK(harmonic_residual(veronese(m).psi, sphere) <= 1e-8);
  CHECK(harmonic_residual(polynomial_map({z(3), one()}), sphere) <= 1e-8);
  const double bad = harmonic_residual(polynomial_map({z() + zb(2), one()}), patch_domain());
  CHECK(bad > 1e-2);
}

TEST_CASE("quaternionic checks") {
  const auto sphere = sphere_domain();
  for (int m = 1; m <= 3; ++m) {
    const auto q = quaternionic_check(veronese(m).psi, sphere);
    CHECK(q.alignment <= 1e-9);
    CHECK(q.min_dbar_norm > 0.5);
    CHECK_FALSE(q.degenerate);
    CHECK(q.near_zeros == 0);
  }
  CHECK(quaternionic_check(polynomial_map({z(), one()}), sphere).degenerate);
  CHECK_THROWS_AS(quaternionic_check(polynomial_map({one(), z(), z(2)}), sphere), Error);
}

TEST_CASE("Veronese battery") {
  const auto sphere = sphere_domain();
  for (int m = 1; m <= 3; ++m) {
    const auto v = veronese(m);
    CHECK((v.A * v.A.adjoint() - Eigen::MatrixXcd::Identity(2 * m, 2 * m)).norm() < 1e-14);
    const auto im = induced_metric(v.psi, sphere);
    CHECK(std::abs(im.min - m * m) < 1e-8);
    CHECK(std::abs(im.max - m * m) < 1e-8);
    const auto e = energies(v.psi, sphere);
    CHECK(std::abs(e.E01 - m * m * 4 * pi) < 1e-6 * m * m * 4 * pi);
    CHECK(e.degree == -1);
    CHECK(weak_conformality(v.psi, sphere) <= 1e-8);
    CHECK(chart_overlap_residual(v.psi, sphere) <= 1e-8);
    const auto ix = index_consistency(v.psi, sphere);
    CHECK(ix.degree == -1);
    CHECK(ix.predicted_index == 0);
    CHECK(ix.near_zeros == 0);

    const auto spinors = spinors_from_map(v.psi, m);
    CHECK(eigenspinor_system_residual(spinors, sphere) <= 1e-8);
    CHECK(sum_of_squares_variation(spinors, sphere) <= 1e-8);
    CHECK(global_criticality_residual(spinors, sphere) <= 1e-6);
    for (const auto& s : spinors) {
      const auto q = energy_momentum(s, sphere);
      CHECK(q.trace_residual <= 1e-8);
      CHECK(q.symmetry_residual <= 1e-12);
    }
  }
  // m = 1 is anti-holomorphic
  const auto e1 = energies(veronese(1).psi, sphere);
  CHECK(std::abs(e1.E10) < 1e-10);
  // explicit m = 2 metric 16 dz dzbar/(1+|z|^2)^2 on chart 0
  const auto v2 = veronese(2);
  for (std::size_t i = 0; i < sphere.samples.size(); i += 53) {
    const auto& s = sphere.samples[i];
    if (s.chart != 0) continue;
    const auto p = evaluate_lift(v2.psi, sphere, s);
    const Eigen::VectorXcd u = project_perp(p.Fzb, p.F);
    const double coeff = 2.0 * u.squaredNorm() / p.F.squaredNorm();  // g_Psi = coeff dz dzbar with g_CP = 4 g_FS
    const double r2 = s.x * s.x + s.y * s.y;
    CHECK(std::abs(2 * coeff - 16.0 / ((1 + r2) * (1 + r2))) < 1e-9 * 16);
  }
}

TEST_CASE("Frenet frames of the twisted cubic") {
  const double r3 = std::sqrt(3.0);
  const PolyVector phi = {one(), z(3), z() * (-r3), z(2) * r3};
  const auto sphere = sphere_domain(24, 48);
  const auto phi1 = frenet_frame(phi, 1);
  const auto zz = z() * zb();
  const PolyVector expect1 = {zb() * -3.0, z(2) * 3.0, (zz * 2.0 - one()) * r3, (z() * 2.0 - z() * zz) * r3};
  CHECK(line_distance(phi1, polynomial_map(expect1), sphere) <= 1e-9);
  // I of the expected first frame: (-conj z2, conj z1, -conj z4, conj z3)
  const PolyVector iexpect = {zb(2) * -3.0, z() * -3.0, (zb() * 2.0 - zb() * zz) * -r3, (zz * 2.0 - one()) * r3};
  CHECK(line_distance(frenet_frame(phi, 2), polynomial_map(iexpect), sphere) <= 1e-9);
  CHECK(line_distance(frenet_frame(phi, 0), polynomial_map(phi), sphere) <= 1e-12);

  // frames are mutually orthogonal
  Rng rng(1);
  for (int t = 0; t < 20; ++t) {
    const double x = rng.uniform(-2, 2), y = rng.uniform(-2, 2);
    std::vector<JetVector> F;
    for (int j = 0; j < 4; ++j) F.push_back(frenet_frame(phi, j).lift(0, x, y));
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b)
        CHECK(std::abs(hdot(F[a], F[b]).v) <= 1e-9 * std::sqrt(std::abs(hnorm2(F[a]).v * hnorm2(F[b]).v)));
  }
  CHECK_THROWS_AS(frenet_frame({one(), z(), z(2), z() * 2.0}, 1), Error);
  // the conic frame Phi_1 is harmonic and has degree 0
  const auto conic1 = frenet_frame({one(), z() * std::sqrt(2.0), z(2)}, 1);
  CHECK(harmonic_residual(conic1, sphere_domain()) <= 1e-8);
  CHECK(energies(conic1, sphere_domain()).degree == 0);
}

TEST_CASE("weak conformality") {
  CHECK(weak_conformality(polynomial_map({z() + zb() * 2.0, one()}), patch_domain()) > 1e-2);
  const auto g = TorusGeometry::make(0.2, 1.3);
  const auto torus = torus_domain(g, FourierField::zero(g), 24, 24);
  const auto gamma = g.dual(1, 0);
  // circle maps are not conformal: the defect is pi^2 |gamma|^2
  CHECK(std::abs(weak_conformality(circle_map(gamma), torus) - pi * pi * gamma.norm2()) < 1e-9);
}

TEST_CASE("circle maps on a torus") {
  const auto g = TorusGeometry::make(0.2, 1.3);
  const auto torus = torus_domain(g, FourierField::zero(g), 24, 24);
  for (auto [c1, c2] : std::vector<std::pair<int, int>>{{1, 0}, {0, 1}, {2, -1}}) {
    const auto gamma = g.dual(c1, c2);
    const auto m = circle_map(gamma);
    const auto e = energies(m, torus);
    CHECK(e.degree == 0);
    CHECK(e.degree_residual < 1e-9);
    CHECK(great_circle_deviation(m, torus) < 1e-12);
    CHECK(harmonic_residual(m, torus) < 1e-8);
    const auto im = induced_metric(m, torus);
    CHECK(std::abs(im.min - pi * pi * gamma.norm2()) < 1e-9 * gamma.norm2());
    CHECK(std::abs(im.max - pi * pi * gamma.norm2()) < 1e-9 * gamma.norm2());
  }
}

TEST_CASE("flat torus eigenspinor maps") {
  for (int c = 0; c < 2; ++c) {
    const auto g = TorusGeometry::make(0.1, 1.2, 0, c);
    const auto w = FourierField::zero(g);
    const auto domain = torus_domain(g, w, 24, 24);
    const auto basis = make_torus_basis(g, 1.5);
    int k = -1;
    double best = 1e9;
    for (int i = 0; i < basis.size(); ++i) {
      const double n = basis.points[i].xi.norm();
      if (n > 0 && n < best) { best = n; k = i; }
    }
    const auto psi = plane_wave_eigenspinor(basis, k, +1);
    const auto map = from_eigenspinors({psi}, basis, w, domain);
    const double lam = psi.eigenvalue;
    const auto e = energies(map, domain);
    CHECK(e.degree == 0);
    CHECK(std::abs(e.E01 - lam * lam * g.area()) < 1e-6 * lam * lam * g.area());
    CHECK(great_circle_deviation(map, domain) <= 1e-9);
    CHECK(harmonic_residual(map, domain) <= 1e-8);
    CHECK(quaternionic_check(map, domain).alignment <= 1e-9);
    const auto im = induced_metric(map, domain);
    CHECK(std::abs(im.min - lam * lam) < 1e-8 * lam * lam);
    CHECK(std::abs(im.max - lam * lam) < 1e-8 * lam * lam);
    const auto field = torus_spinor_field(basis, psi, w);
    CHECK(eigenspinor_system_residual({field}, domain) <= 1e-8);
    const auto q = energy_momentum(field, domain);
    CHECK(q.trace_residual <= 1e-8);
    for (const auto& Q : q.Q) CHECK((Q - q.Q.front()).norm() < 1e-9 * q.Q.front().norm());
  }
}

TEST_CASE("eigenspinor maps for a perturbed metric") {
  const auto g = TorusGeometry::make(0.15, 1.1, 0, 1);
  auto w = FourierField::zero(g);
  w.add_cosine(1, 0, 0.15).add_cosine(1, 1, 0.08, 0.7);
  const auto sol = solve_conformal(g, w, 10.0);
  const auto cl = sol.lambda1_cluster();
  const auto domain = torus_domain(g, w, 32, 32);
  const auto& psi = sol.spinors[cl.begin];
  const auto map = from_eigenspinors({psi}, sol.basis, w, domain);
  const double lam = psi.eigenvalue;
  const auto e = energies(map, domain);
  CHECK(e.degree == 0);
  CHECK(std::abs(e.E01 - lam * lam * sol.area) < 1e-6 * lam * lam * sol.area);
  // a single spinor of a non-critical metric has non-constant length, so the map is not harmonic
  CHECK(harmonic_residual(map, domain) > 1e-3);
  CHECK(quaternionic_check(map, domain).alignment <= 1e-9);
  CHECK(eigenspinor_system_residual({torus_spinor_field(sol.basis, psi, w)}, domain) <= 1e-8);

  // the partner spinor's map is the conjugate of I applied to the lift
  const auto partner = quaternionic_partner(sol.basis, psi);
  const auto pmap = from_eigenspinors({partner}, sol.basis, w, domain);
  const auto pl = partner_line_residuals(map, pmap, domain);
  CHECK(pl.to_conj_I <= 1e-9);

  CHECK_THROWS_AS(from_eigenspinors({psi, sol.spinors[cl.begin - 1]}, sol.basis, w, domain), Error);
  auto wrong = torus_spinor_field(sol.basis, psi, w);
  wrong.lambda *= 1.5;
  CHECK_THROWS_AS(energy_momentum(wrong, domain), Error);
}

TEST_CASE("gauge invariance of map-level scalars") {
  const auto sphere = sphere_domain(32, 64);
  const std::vector<HomogeneousMap> maps = {veronese(2).psi, polynomial_map({z(2) + zb(), one()}),
                                            frenet_frame({one(), z() * std::sqrt(3.0), z(2) * std::sqrt(3.0), z(3)}, 1)};
  for (const auto& m : maps) {
    const auto a = scalars(m, sphere);
    const auto b = scalars(gauged(m, gauge), sphere);
    CHECK(std::abs(a.E10 - b.E10) < 1e-9 * (1 + a.E10));
    CHECK(std::abs(a.E01 - b.E01) < 1e-9 * (1 + a.E01));
    CHECK(std::abs(a.residual - b.residual) < 1e-9 * (1 + a.residual));
    CHECK(std::abs(a.conformality - b.conformality) < 1e-9 * (1 + a.conformality));
    CHECK(std::abs(a.metric_min - b.metric_min) < 1e-9 * (1 + a.metric_min));
    CHECK(std::abs(a.metric_max - b.metric_max) < 1e-9 * (1 + a.metric_max));
  }
  // unitary changes of the target act isometrically
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Random(4, 4);
  U = Eigen::HouseholderQR<Eigen::MatrixXcd>(U).householderQ();
  const auto a = scalars(veronese(2).psi, sphere);
  const auto b = scalars(transformed(U, veronese(2).psi), sphere);
  CHECK(std::abs(a.E01 - b.E01) < 1e-9 * a.E01);
}

TEST_CASE("holomorphic maps are refused where the operation needs dbar") {
  const auto sphere = sphere_domain();
  CHECK_THROWS_AS(induced_metric(polynomial_map({z(), one()}), sphere), Error);
  CHECK_THROWS_AS(index_consistency(polynomial_map({z(), one()}), sphere), Error);
  const auto ix = index_consistency(polynomial_map({zb(), one()}), sphere);
  CHECK(ix.predicted_index == 0);
  CHECK(ix.near_zeros == 0);
}

TEST_CASE("polynomial algebra") {
  const auto p = z(2) * zb() * cplx(2, 1) + one();
  const cplx z0(0.3, -0.7);
  CHECK(std::abs(p(z0) - (cplx(2, 1) * z0 * z0 * std::conj(z0) + 1.0)) < 1e-15);
  CHECK(std::abs(p.dz()(z0) - cplx(2, 1) * 2.0 * z0 * std::conj(z0)) < 1e-15);
  CHECK(std::abs(p.dzbar()(z0) - cplx(2, 1) * z0 * z0) < 1e-15);
  const Jet J = p(Jet::coordinate_z(z0));
  CHECK(std::abs(J.dz() - p.dz()(z0)) < 1e-14);
  CHECK(std::abs(J.dzb() - p.dzbar()(z0)) < 1e-14);
  CHECK(std::abs(J.dzdzb() - p.dz().dzbar()(z0)) < 1e-14);
  CHECK(p.degree_z() == 2);
  CHECK(p.degree_zbar() == 1);
  CHECK_FALSE(p.holomorphic());
  // the chart w = 1/z lift describes the same line
  const PolyVector F = {z(3) + one(), z() * 2.0};
  const auto G = chart_one_form(F);
  const cplx w0(0.4, 0.9), zz = 1.0 / w0;
  const cplx a0 = F[0](zz), a1 = F[1](zz), b0 = G[0](w0), b1 = G[1](w0);
  CHECK(std::abs(a0 * b1 - a1 * b0) < 1e-12 * std::abs(a0 * b1));
}
