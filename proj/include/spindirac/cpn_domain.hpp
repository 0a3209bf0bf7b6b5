#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "spindirac/fourier_field.hpp"
#include "spindirac/jet.hpp"
#include "spindirac/lattice_spin.hpp"
#include "spindirac/polynomial.hpp"

namespace spindirac {

// Chart coordinates (x, y) with metric e^{2 omega}(dx^2 + dy^2).
// Sphere: chart 0 is z = cot(theta/2) e^{i phi}, chart 1 is w = 1/z; omega = log(2/(1+|z|^2)).
// Torus: one chart with physical coordinates. Patch: flat square, one chart.
enum class DomainKind { Sphere, Torus, Patch };

struct DomainSample {
  int chart = 0;
  double x = 0.0;
  double y = 0.0;
  double weight = 0.0;  // dv_g quadrature weight
};

struct Domain {
  DomainKind kind = DomainKind::Sphere;
  std::vector<DomainSample> samples;
  TorusGeometry torus;
  FourierField omega;  // torus conformal factor (zero elsewhere)

  Jet omega_jet(int chart, double x, double y) const;
  double area() const;
};

// Gauss-Legendre in cos(theta) times a uniform azimuthal grid; the hemisphere theta >= pi/2 uses
// chart 0 and the other hemisphere chart 1.
Domain sphere_domain(int n_theta = 48, int n_phi = 96);
Domain torus_domain(const TorusGeometry& geometry, const FourierField& omega, int Q1 = 32, int Q2 = 32);
Domain patch_domain(double half_width = 1.0, int n = 24);

// Value and derivatives of a torus Fourier field at physical coordinates.
Jet fourier_jet(const FourierField& field, double x, double y);
// Round-sphere conformal factor log(2/(1+|z|^2)) in either chart.
Jet round_sphere_omega(double x, double y);

// Chart change for the sphere: (x, y) in chart c to the other chart.
std::pair<double, double> other_chart(double x, double y);

// Map into CP^n through a lift per chart, returning jets of the n+1 components.
struct HomogeneousMap {
  int n = 1;
  std::string name;
  std::function<JetVector(int chart, double x, double y)> lift;
};

HomogeneousMap polynomial_map(const PolyVector& F, const std::string& name = "polynomial");
// Gauge change F -> h F with a nonvanishing scalar jet field.
HomogeneousMap gauged(const HomogeneousMap& map, std::function<Jet(int, double, double)> h);
HomogeneousMap transformed(const Eigen::MatrixXcd& A, const HomogeneousMap& map);

}  // namespace spindirac
