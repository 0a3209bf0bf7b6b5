#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <tuple>
#include <vector>

#include "spindirac/errors.hpp"
#include "spindirac/exact_spectrum.hpp"
#include "spindirac/lattice_spin.hpp"
#include "spindirac/rng.hpp"

using namespace spindirac;
using std::numbers::pi;

namespace {

// Independent oracle: scan integer coefficients in a generous box and keep the norms directly.
std::vector<double> brute_force_norms(double a, double b, int chi1, int chi2, double radius) {
  std::vector<double> out;
  const int N = static_cast<int>(std::ceil(radius * (1.0 + std::abs(a) + b + 1.0 / b))) + 3;
  for (int n1 = -N; n1 <= N; ++n1)
    for (int n2 = -N; n2 <= N; ++n2) {
      const double c1 = n1 + 0.5 * chi1, c2 = n2 + 0.5 * chi2;
      // xi(1,0) = c1, xi(a,b) = c2
      const double u = c1, v = (c2 - a * c1) / b;
      const double r = std::hypot(u, v);
      if (r <= radius) out.push_back(r);
    }
  std::sort(out.begin(), out.end());
  return out;
}

// Distinct norms with counts, grouped at relative 1e-9.
std::vector<std::pair<double, int>> group(const std::vector<double>& norms) {
  std::vector<std::pair<double, int>> g;
  for (double r : norms) {
    if (r == 0.0) continue;
    if (!g.empty() && r - g.back().first <= 1e-9 * g.back().first)
      ++g.back().second;
    else
      g.emplace_back(r, 1);
  }
  return g;
}

std::pair<double, double> random_trivial_moduli(Rng& rng) {
  for (;;) {
    const double a = rng.uniform(-0.5, 0.5), b = rng.uniform(0.3, 4.0);
    if (a * a + b * b >= 1.0) return {a, b};
  }
}

std::pair<double, double> random_nontrivial_moduli(Rng& rng) {
  for (;;) {
    const double a = rng.uniform(-0.5, 0.5), b = rng.uniform(0.3, 4.0);
    const double d = std::abs(a) - 0.5;
    if (b * b + d * d >= 0.25) return {a, b};
  }
}

}  // namespace

TEST_CASE("dual basis examples") {
  auto [d1, d2] = dual_basis({0.0, 1.0});
  CHECK(d1.u == doctest::Approx(1.0));
  CHECK(d1.v == doctest::Approx(0.0));
  CHECK(d2.u == doctest::Approx(0.0));
  CHECK(d2.v == doctest::Approx(1.0));

  std::tie(d1, d2) = dual_basis({0.0, 2.0});
  CHECK(d2.v == doctest::Approx(0.5));
  CHECK(d1.u == doctest::Approx(1.0));

  std::tie(d1, d2) = dual_basis({0.5, std::sqrt(3.0) / 2});
  CHECK(std::abs(d1.u - 1.0) < 1e-14);
  CHECK(std::abs(d1.v + 1.0 / std::sqrt(3.0)) < 1e-14);
  CHECK(std::abs(d2.u) < 1e-14);
  CHECK(std::abs(d2.v - 2.0 / std::sqrt(3.0)) < 1e-14);

  CHECK_THROWS_AS(dual_basis({0.0, 0.0}), Error);
  CHECK_THROWS_AS(TorusGeometry::make(0.0, -1.0), Error);
}

TEST_CASE("dual pairing holds for random lattices") {
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    const double a = rng.uniform(-3, 3), b = rng.uniform(0.05, 5);
    auto [d1, d2] = dual_basis({a, b});
    CHECK(std::abs(d1(1, 0) - 1) < 1e-12);
    CHECK(std::abs(d1(a, b)) < 1e-12);
    CHECK(std::abs(d2(1, 0)) < 1e-12);
    CHECK(std::abs(d2(a, b) - 1) < 1e-12);
  }
}

TEST_CASE("affine shift") {
  auto eta = affine_shift(TorusGeometry::make(0, 1));
  CHECK(eta.u == 0.0);
  CHECK(eta.v == 0.0);
  eta = affine_shift(TorusGeometry::make(0, 1, 0, 1));
  CHECK(eta.u == doctest::Approx(0.0));
  CHECK(eta.v == doctest::Approx(0.5));
  eta = affine_shift(TorusGeometry::make(0, 1, 1, 1));
  CHECK(eta.u == doctest::Approx(0.5));
  CHECK(eta.v == doctest::Approx(0.5));

  // congruence xi(gamma) + chi(gamma)/2 in Z for every enumerated point
  for (int c1 = 0; c1 < 2; ++c1)
    for (int c2 = 0; c2 < 2; ++c2) {
      const auto g = TorusGeometry::make(0.3, 1.7, c1, c2);
      for (const auto& p : enumerate_shifted_dual(g, 4.0)) {
        const double r1 = p.xi(1.0, 0.0) + 0.5 * c1, r2 = p.xi(0.3, 1.7) + 0.5 * c2;
        CHECK(std::abs(r1 - std::round(r1)) < 1e-10);
        CHECK(std::abs(r2 - std::round(r2)) < 1e-10);
      }
    }
}

TEST_CASE("enumeration examples") {
  const auto sq = TorusGeometry::make(0, 1);
  auto pts = enumerate_shifted_dual(sq, 1.0);
  REQUIRE(pts.size() == 5);
  CHECK(pts[0].xi.norm() == 0.0);
  std::set<std::pair<int, int>> got;
  for (const auto& p : pts) got.insert({static_cast<int>(std::lround(p.xi.u)), static_cast<int>(std::lround(p.xi.v))});
  CHECK(got == std::set<std::pair<int, int>>{{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}});

  pts = enumerate_shifted_dual(TorusGeometry::make(0, 1, 0, 1), 0.6);
  REQUIRE(pts.size() == 2);
  for (const auto& p : pts) {
    CHECK(std::abs(p.xi.u) < 1e-15);
    CHECK(std::abs(std::abs(p.xi.v) - 0.5) < 1e-15);
  }

  pts = enumerate_shifted_dual(TorusGeometry::make(0.2, 1.3), 0.0);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].xi.norm() == 0.0);

  CHECK_THROWS_AS(enumerate_shifted_dual(sq, 1e4, 1000), Error);
}

TEST_CASE("enumeration matches a brute-force box scan and is monotone in the radius") {
  Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(0.2, 3);
    const int c1 = rng.integer(0, 1), c2 = rng.integer(0, 1);
    const double radius = rng.uniform(0.5, 10.0);
    const auto g = TorusGeometry::make(a, b, c1, c2);
    const auto pts = enumerate_shifted_dual(g, radius);
    const auto oracle = brute_force_norms(a, b, c1, c2, radius);
    REQUIRE(pts.size() == oracle.size());
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(std::abs(pts[i].xi.norm() - oracle[i]) < 1e-12);
    // sorted by norm, ties lexicographic
    for (std::size_t i = 1; i < pts.size(); ++i) {
      CHECK(pts[i - 1].xi.norm() <= pts[i].xi.norm() + 1e-15);
    }
    const auto smaller = enumerate_shifted_dual(g, 0.5 * radius);
    std::set<std::pair<int, int>> big;
    for (const auto& p : pts) big.insert({p.n1, p.n2});
    for (const auto& p : smaller) CHECK(big.count({p.n1, p.n2}) == 1);
  }
}

TEST_CASE("moduli validation") {
  CHECK(validate_moduli(TorusGeometry::make(0, 7)).ok);
  const auto bad = validate_moduli(TorusGeometry::make(0, 0.5));
  CHECK_FALSE(bad.ok);
  CHECK_FALSE(bad.diagnostic.empty());
  CHECK(validate_moduli(TorusGeometry::make(0, 1, 0, 1)).ok);
  CHECK_FALSE(validate_moduli(TorusGeometry::make(0.7, 2)).ok);
}

TEST_CASE("moduli reduction preserves the lattice up to scale") {
  Rng rng(5);
  for (int i = 0; i < 30; ++i) {
    const double a = rng.uniform(-3, 3), b = rng.uniform(0.1, 3);
    const auto g = TorusGeometry::make(a, b);
    const auto red = reduce_moduli(g);
    const auto rg = TorusGeometry::make(red.lattice.a, red.lattice.b);
    CHECK(validate_moduli(rg).ok);
    // Normalized spectra are conformal invariants of the lattice shape.
    const double lhs = normalized(torus_spectrum(g, 3), 1);
    const double rhs = normalized(torus_spectrum(rg, 3), 1);
    CHECK(std::abs(lhs - rhs) < 1e-10 * lhs);
  }
}

TEST_CASE("square torus spectrum") {
  const auto r = torus_spectrum(TorusGeometry::make(0, 1), 10);
  const auto pos = r.positive();
  REQUIRE(pos.size() == 10);
  CHECK(std::abs(pos[0].value - 2 * pi) < 1e-14);
  CHECK(pos[0].complex_mult == 4);
  CHECK(pos[0].quaternionic_mult == 2);
  CHECK(r.kernel_quaternionic_dim == 1);
  CHECK(r.area == 1.0);
  for (const auto& e : r.entries) CHECK(e.complex_mult == 2 * e.quaternionic_mult);

  // |xi|^2 = 25 is reached by (±5,0), (0,±5), (±3,±4), (±4,±3): twelve vectors
  const auto big = torus_spectrum(TorusGeometry::make(0, 1), 40);
  bool found = false;
  for (const auto& e : big.positive())
    if (std::abs(e.value - 2 * pi * 5) < 1e-9) {
      found = true;
      CHECK(e.complex_mult == 12);
    }
  CHECK(found);
}

TEST_CASE("first eigenvalue on the moduli domains") {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    auto [a, b] = random_trivial_moduli(rng);
    auto r = torus_spectrum(TorusGeometry::make(a, b), 2);
    CHECK(std::abs(r.positive()[0].value - 2 * pi / b) < 1e-12 * 2 * pi / b);
    CHECK(std::abs(normalized(r, 1) - 2 * pi / std::sqrt(b)) < 1e-12);
    std::tie(a, b) = random_nontrivial_moduli(rng);
    r = torus_spectrum(TorusGeometry::make(a, b, 0, 1), 2);
    CHECK(std::abs(r.positive()[0].value - pi / b) < 1e-12 * pi / b);
    CHECK(std::abs(normalized(r, 1) - pi / std::sqrt(b)) < 1e-12);
  }
}

TEST_CASE("torus spectrum equals the brute-force oracle for the first fifty levels") {
  Rng rng(23);
  for (int i = 0; i < 20; ++i) {
    for (int c = 0; c < 4; ++c) {
      const int c1 = c & 1, c2 = c >> 1;
      auto [a, b] = c == 0 ? random_trivial_moduli(rng) : random_nontrivial_moduli(rng);
      const auto r = torus_spectrum(TorusGeometry::make(a, b, c1, c2), 50);
      const auto pos = r.positive();
      REQUIRE(pos.size() == 50);
      const auto oracle = group(brute_force_norms(a, b, c1, c2, pos.back().value / (2 * pi) * 1.01 + 1e-9));
      REQUIRE(oracle.size() >= 50);
      for (int k = 0; k < 50; ++k) {
        CHECK(pos[k].value == doctest::Approx(2 * pi * oracle[k].first).epsilon(1e-13));
        CHECK(pos[k].complex_mult == oracle[k].second);
      }
    }
  }
}

TEST_CASE("spectrum symmetry and scaling invariance") {
  const auto g = TorusGeometry::make(0.21, 1.4, 1, 0);
  const auto r = torus_spectrum(g, 20);
  const auto n = r.entries.size();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(r.entries[i].value == doctest::Approx(-r.entries[n - 1 - i].value));
    CHECK(r.entries[i].complex_mult == r.entries[n - 1 - i].complex_mult);
  }
  // The lattice c*Gamma: every eigenvalue divides by c and the area multiplies by c^2.
  std::vector<double> flat;
  for (const auto& e : r.entries)
    for (int m = 0; m < e.complex_mult; ++m) flat.push_back(e.value);
  for (double c : {0.3, 2.5, 17.0}) {
    std::vector<double> scaled = flat;
    for (auto& v : scaled) v /= c;
    const auto rs = group_spectrum(scaled, c * c * r.area);
    for (int k = 1; k <= r.positive_count(); ++k) CHECK(std::abs(normalized(rs, k) - normalized(r, k)) < 1e-12 * normalized(r, k));
  }
}

TEST_CASE("kernel dimension") {
  CHECK(kernel_dimension(TorusGeometry::make(0, 1)) == 1);
  CHECK(kernel_dimension(TorusGeometry::make(0, 1, 0, 1)) == 0);
  CHECK(kernel_dimension(TorusGeometry::make(0, 1, 1, 1)) == 0);
}

TEST_CASE("normalized and squared enumerations") {
  const auto triv = torus_spectrum(TorusGeometry::make(0, 1), 5);
  CHECK(squared_index(triv, 1) == 0.0);
  CHECK(squared_index(triv, 2) == doctest::Approx(2 * pi));
  const auto non = torus_spectrum(TorusGeometry::make(0, 1, 0, 1), 5);
  CHECK(std::abs(squared_index(non, 1) - pi) < 1e-14);
  double prev = -1;
  for (int k = 1; k <= 2 * non.positive_count(); ++k) {
    const double v = squared_index(non, k);
    CHECK(v * v >= prev);
    prev = v * v;
  }
  CHECK_THROWS_AS(normalized(non, 10000), Error);
  CHECK_THROWS_AS(squared_index(non, 10000), Error);

  const auto sph = sphere_spectrum(4);
  CHECK(std::abs(normalized(sph, 1) - 2 * std::sqrt(pi)) < 1e-14);
  CHECK(sph.area == doctest::Approx(4 * pi));
  CHECK(sph.kernel_quaternionic_dim == 0);
  const auto pos = sph.positive();
  REQUIRE(pos.size() == 4);
  for (int j = 1; j <= 4; ++j) {
    CHECK(pos[j - 1].value == doctest::Approx(j));
    CHECK(pos[j - 1].complex_mult == 2 * j);
  }
}
