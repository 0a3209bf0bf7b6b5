#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "spindirac/dirac_sphere.hpp"
#include "spindirac/errors.hpp"
#include "spindirac/exact_spectrum.hpp"
#include "spindirac/rng.hpp"
#include "spindirac/wigner.hpp"

using namespace spindirac;
using std::numbers::pi;

namespace {

double fact(int n) { return std::tgamma(n + 1.0); }

// Closed-form sum for d^j_{m' m}(beta) with doubled arguments.
double wigner_sum(int tj, int tmp, int tm, double beta) {
  const int jpm = (tj + tmp) / 2, jmm = (tj - tmp) / 2, jp = (tj + tm) / 2, jm = (tj - tm) / 2;
  const int dm = (tmp - tm) / 2;
  const double pre = std::sqrt(fact(jpm) * fact(jmm) * fact(jp) * fact(jm));
  const double c = std::cos(0.5 * beta), s = std::sin(0.5 * beta);
  double sum = 0;
  for (int k = 0; k <= tj; ++k) {
    if (jp - k < 0 || dm + k < 0 || jmm - k < 0) continue;
    const double sign = ((dm + k) % 2 == 0) ? 1.0 : -1.0;
    sum += sign / (fact(jp - k) * fact(k) * fact(dm + k) * fact(jmm - k)) * std::pow(c, tj - dm - 2 * k) *
           std::pow(s, dm + 2 * k);
  }
  return pre * sum;
}

std::vector<double> flat_values(const SpectrumReport& r) {
  std::vector<double> v;
  for (const auto& e : r.entries)
    for (int m = 0; m < e.complex_mult; ++m) v.push_back(e.value);
  return v;
}

SphereConformalFactor random_factor(int band, double amp, std::uint64_t seed) {
  Rng rng(seed);
  auto w = SphereConformalFactor::zero(band);
  for (int l = 1; l <= band; ++l)
    for (int m = -l; m <= l; ++m) w.coeff(l, m) = amp * rng.uniform(-1, 1);
  return w;
}

}  // namespace

TEST_CASE("Wigner d against the closed-form sum") {
  CHECK(std::abs(wigner_d(1, 1, -1, 0.7) + std::sin(0.35)) < 1e-15);
  CHECK(std::abs(wigner_d(1, 1, 1, 0.7) - std::cos(0.35)) < 1e-15);
  double worst = 0;
  for (double beta : {0.0, 0.3, 1.1, 1.9, 2.8, pi}) {
    for (int tj = 0; tj <= 15; ++tj)
      for (int tm = -tj; tm <= tj; tm += 2)
        for (int ts = -tj; ts <= tj; ts += 2) worst = std::max(worst, std::abs(wigner_d(tj, tm, ts, beta) - wigner_sum(tj, tm, ts, beta)));
  }
  CHECK(worst < 1e-12);
  // the column entry i is j = j0 + i
  const auto col = wigner_d_column(3, -1, 11, 0.9);
  for (std::size_t i = 0; i < col.size(); ++i) CHECK(std::abs(col[i] - wigner_sum(3 + 2 * static_cast<int>(i), 3, -1, 0.9)) < 1e-12);
}

TEST_CASE("Gauss-Legendre and real harmonics") {
  const auto gl = gauss_legendre(12);
  double s0 = 0, s22 = 0;
  for (int i = 0; i < 12; ++i) {
    s0 += gl.weights[i];
    s22 += gl.weights[i] * std::pow(gl.nodes[i], 22);
  }
  CHECK(s0 == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(s22 == doctest::Approx(2.0 / 23).epsilon(1e-13));
  // orthonormality of real spherical harmonics up to l = 3
  const int nt = 12, np = 16;
  const auto rule = gauss_legendre(nt);
  for (int l1 = 0; l1 <= 3; ++l1)
    for (int m1 = -l1; m1 <= l1; ++m1)
      for (int l2 = 0; l2 <= 3; ++l2)
        for (int m2 = -l2; m2 <= l2; ++m2) {
          double s = 0;
          for (int i = 0; i < nt; ++i)
            for (int k = 0; k < np; ++k) {
              const double th = std::acos(rule.nodes[i]), ph = 2 * pi * k / np;
              s += rule.weights[i] * (2 * pi / np) * real_spherical_harmonic(l1, m1, th, ph) * real_spherical_harmonic(l2, m2, th, ph);
            }
          CHECK(std::abs(s - (l1 == l2 && m1 == m2 ? 1.0 : 0.0)) < 1e-13);
        }
}

TEST_CASE("round sphere operator") {
  const auto d = assemble_round(1);
  CHECK((d.A - d.A.adjoint()).norm() < 1e-14);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d.A);
  const auto ev = es.eigenvalues();
  REQUIRE(ev.size() == 4);
  CHECK(ev(0) == doctest::Approx(-1));
  CHECK(ev(1) == doctest::Approx(-1));
  CHECK(ev(2) == doctest::Approx(1));
  CHECK(ev(3) == doctest::Approx(1));

  const auto big = assemble_round(7);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es2(big.A);
  const auto report = group_spectrum(std::vector<double>(es2.eigenvalues().data(), es2.eigenvalues().data() + es2.eigenvalues().size()), 4 * pi);
  const auto exact = sphere_spectrum(4);
  const auto pos = report.positive();
  REQUIRE(pos.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(pos[k].value == doctest::Approx(exact.positive()[k].value));
    CHECK(pos[k].complex_mult == exact.positive()[k].complex_mult);
  }
  CHECK(pos[1].complex_mult == 4);
  const int n = es2.eigenvalues().size();
  for (int i = 0; i < n; ++i) CHECK(std::abs(es2.eigenvalues()(i) + es2.eigenvalues()(n - 1 - i)) < 1e-12);
}

TEST_CASE("round and constant factors") {
  const auto zero = SphereConformalFactor::zero(2);
  const auto sol = solve_conformal_sphere(zero, 9, false);
  CHECK(std::abs(sol.lambda1_bar() - 2 * std::sqrt(pi)) < 1e-8);
  CHECK(sol.orthonormality_residual < 1e-12);
  CHECK(sol.area == doctest::Approx(4 * pi).epsilon(1e-13));
  const auto exact = flat_values(sphere_spectrum(4));
  std::vector<double> num;
  for (int i = 0; i < sol.eigenvalues.size(); ++i)
    if (std::abs(sol.eigenvalues(i)) < 4.5) num.push_back(sol.eigenvalues(i));
  REQUIRE(num.size() == exact.size());
  for (std::size_t i = 0; i < num.size(); ++i) CHECK(std::abs(num[i] - exact[i]) < 1e-10);

  auto c = SphereConformalFactor::zero(2);
  c.coeff(0, 0) = 0.8;
  const auto sc = solve_conformal_sphere(c, 9, false);
  CHECK(std::abs(sc.lambda1_bar() - 2 * std::sqrt(pi)) < 1e-8);
  CHECK(std::abs(sc.lambda1() - std::exp(-0.8 / std::sqrt(4 * pi))) < 1e-10);

  auto y10 = SphereConformalFactor::zero(1);
  y10.coeff(1, 0) = 0.2;
  const auto sy = solve_conformal_sphere(y10, 15, false);
  MESSAGE("lambda1_bar for 0.2 Y10: " << sy.lambda1_bar());
  CHECK(sy.lambda1_bar() >= 2 * std::sqrt(pi) - 1e-6);
}

TEST_CASE("coarse quadrature is rejected") {
  auto w = SphereConformalFactor::zero(1);
  w.coeff(1, 0) = 0.1;
  const auto basis = make_sphere_basis(9, 1, 4, 8);
  CHECK_THROWS_AS(solve_conformal_sphere(w, basis), Error);
}

TEST_CASE("rotating the factor leaves the spectrum invariant") {
  const auto w = random_factor(2, 0.05, 31);
  Eigen::Matrix3d R = (Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized())).toRotationMatrix();
  const auto a = solve_conformal_sphere(w, 13, false);
  const auto b = solve_conformal_sphere(w.rotated(R), 13, false);
  double worst = 0;
  for (int i = 0; i < a.eigenvalues.size(); ++i)
    if (std::abs(a.eigenvalues(i)) < 4) worst = std::max(worst, std::abs(a.eigenvalues(i) - b.eigenvalues(i)));
  CHECK(worst < 1e-8);
  // rotating by a z-axis angle is exact on the azimuthal grid too
  CHECK(std::abs(a.lambda1_bar() - b.lambda1_bar()) < 1e-8);
}

TEST_CASE("mean-zero perturbations split the first eigenspace symmetrically") {
  const auto dir = random_factor(2, 1.0, 5);
  const double t = 1e-4;
  auto wp = dir, wm = dir;
  for (auto& c : wp.coeffs) c *= t;
  for (auto& c : wm.coeffs) c *= -t;
  const auto sp = solve_conformal_sphere(wp, 11, false);
  const auto sm = solve_conformal_sphere(wm, 11, false);
  const auto round = solve_conformal_sphere(SphereConformalFactor::zero(2), 11, false);
  const int i0 = static_cast<int>(round.eigenvalues.size()) / 2;
  REQUIRE(std::abs(round.eigenvalues(i0) - 1.0) < 1e-12);
  REQUIRE(std::abs(round.eigenvalues(i0 + 1) - 1.0) < 1e-12);
  const double trace_slope = (sp.eigenvalues(i0) + sp.eigenvalues(i0 + 1) - sm.eigenvalues(i0) - sm.eigenvalues(i0 + 1)) / (2 * t);
  CHECK(std::abs(trace_slope) < 1e-6);
}

TEST_CASE("Bar sweep") {
  const auto rep = bar_sweep(20, 3, 0.3, 7, 15, 1e-6, true);
  CHECK(rep.violations == 0);
  REQUIRE(rep.samples.size() == 20);
  CHECK(rep.samples[0].equality_case);
  CHECK(std::abs(rep.samples[0].lambda1_bar - 2 * std::sqrt(pi)) < 1e-8);
  for (std::size_t i = 1; i < rep.samples.size(); ++i) {
    CHECK(rep.samples[i].lambda1_bar >= 2 * std::sqrt(pi) - 1e-6);
    CHECK(rep.samples[i].sup_omega <= 0.3 + 1e-12);
  }
  CHECK(rep.argmin == 0);

  const auto flat = bar_sweep(5, 3, 0.0, 1, 7);
  for (const auto& s : flat.samples) CHECK(std::abs(s.lambda1_bar - 2 * std::sqrt(pi)) < 1e-8);

  const auto again = bar_sweep(20, 3, 0.3, 7, 15, 1e-6, true);
  for (std::size_t i = 0; i < rep.samples.size(); ++i) CHECK(again.samples[i].lambda1_bar == rep.samples[i].lambda1_bar);
}
