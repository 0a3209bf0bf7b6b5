#include "spindirac/cpn_harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include "spindirac/errors.hpp"
#include "spindirac/parallel.hpp"

namespace spindirac {

namespace {

constexpr double kPi = std::numbers::pi;

double norm2(const Eigen::VectorXcd& v) { return v.squaredNorm(); }

template <class F>
std::vector<double> per_node(const Domain& d, F&& f) {
  std::vector<double> out(d.samples.size());
  parallel_for(d.samples.size(), [&](std::size_t i) { out[i] = f(d.samples[i]); });
  return out;
}

bool vanishes(const LiftPoint& p) { return p.F.norm() < kLiftFloor; }

double dbar_density(const LiftPoint& p) {
  return 4.0 * norm2(project_perp(p.Fzb, p.F)) / (std::exp(2.0 * p.omega) * norm2(p.F));
}

}  // namespace

LiftPoint evaluate_lift(const HomogeneousMap& map, const Domain& domain, const DomainSample& s) {
  const JetVector J = map.lift(s.chart, s.x, s.y);
  const auto n = static_cast<Eigen::Index>(J.size());
  LiftPoint p;
  p.F.resize(n);
  p.Fz.resize(n);
  p.Fzb.resize(n);
  p.Fzzb.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const Jet& j = J[static_cast<std::size_t>(k)];
    p.F(k) = j.v;
    p.Fz(k) = j.dz();
    p.Fzb(k) = j.dzb();
    p.Fzzb(k) = j.dzdzb();
  }
  p.omega = domain.omega_jet(s.chart, s.x, s.y).v.real();
  return p;
}

Eigen::VectorXcd project_perp(const Eigen::VectorXcd& u, const Eigen::VectorXcd& F) {
  return u - (F.dot(u) / F.squaredNorm()) * F;
}

Eigen::VectorXcd quaternionic_structure(const Eigen::VectorXcd& F) {
  if (F.size() % 2 != 0) throw Error(ErrorKind::EvenAmbientDimension, "I needs an even number of components");
  Eigen::VectorXcd r(F.size());
  for (Eigen::Index k = 0; k < F.size(); k += 2) {
    r(k) = -std::conj(F(k + 1));
    r(k + 1) = std::conj(F(k));
  }
  return r;
}

std::pair<double, double> energy_densities(const HomogeneousMap& map, const Domain& domain,
                                           const DomainSample& s) {
  const LiftPoint p = evaluate_lift(map, domain, s);
  if (vanishes(p)) throw Error(ErrorKind::LiftVanishes, "lift vanishes at the evaluation point");
  const double scale = std::exp(2.0 * p.omega) * norm2(p.F);
  return {4.0 * norm2(project_perp(p.Fz, p.F)) / scale, 4.0 * norm2(project_perp(p.Fzb, p.F)) / scale};
}

EnergyReport energies(const HomogeneousMap& map, const Domain& domain) {
  const std::size_t n = domain.samples.size();
  std::vector<double> e10(n, 0.0), e01(n, 0.0);
  std::vector<char> skip(n, 0);
  parallel_for(n, [&](std::size_t i) {
    const LiftPoint p = evaluate_lift(map, domain, domain.samples[i]);
    if (vanishes(p)) {
      skip[i] = 1;
      return;
    }
    const double scale = std::exp(2.0 * p.omega) * norm2(p.F);
    e10[i] = 4.0 * norm2(project_perp(p.Fz, p.F)) / scale;
    e01[i] = 4.0 * norm2(project_perp(p.Fzb, p.F)) / scale;
  });
  EnergyReport r;
  for (std::size_t i = 0; i < n; ++i) {
    if (skip[i]) {
      ++r.excluded_nodes;
      continue;
    }
    r.E10 += domain.samples[i].weight * e10[i];
    r.E01 += domain.samples[i].weight * e01[i];
  }
  const double q = (r.E10 - r.E01) / (4.0 * kPi);
  r.degree = static_cast<int>(std::lround(q));
  r.degree_residual = std::abs(r.E10 - r.E01 - 4.0 * kPi * r.degree);
  if (r.degree_residual > 1e-3) {
    std::ostringstream os;
    os << "energy difference is " << q << " times 4 pi; refine the quadrature";
    throw Error(ErrorKind::QuadratureUnresolved, os.str());
  }
  return r;
}

double harmonic_residual(const HomogeneousMap& map, const Domain& domain) {
  const auto dens = per_node(domain, [&](const DomainSample& s) {
    const LiftPoint p = evaluate_lift(map, domain, s);
    if (vanishes(p)) return 0.0;
    const double F2 = norm2(p.F);
    const cplx a = p.F.dot(p.Fzb) / F2;  // <F_zbar, F>/|F|^2
    const cplx b = p.F.dot(p.Fz) / F2;
    const Eigen::VectorXcd R =
        project_perp(p.Fzzb, p.F) - a * project_perp(p.Fz, p.F) - b * project_perp(p.Fzb, p.F);
    return 4.0 * norm2(R) / (F2 * std::exp(4.0 * p.omega));
  });
  double acc = 0.0;
  for (std::size_t i = 0; i < dens.size(); ++i) acc += domain.samples[i].weight * dens[i];
  return std::sqrt(acc);
}

QuaternionicReport quaternionic_check(const HomogeneousMap& map, const Domain& domain, double zero_tol) {
  if ((map.n + 1) % 2 != 0)
    throw Error(ErrorKind::EvenAmbientDimension, "quaternionic structure needs an odd-dimensional target");
  const std::size_t n = domain.samples.size();
  std::vector<double> align(n, 0.0), dbar(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const LiftPoint p = evaluate_lift(map, domain, domain.samples[i]);
    if (vanishes(p)) return;
    const Eigen::VectorXcd u = project_perp(p.Fzb, p.F);
    const Eigen::VectorXcd IF = quaternionic_structure(p.F);
    dbar[i] = std::sqrt(dbar_density(p));
    const double un = u.norm();
    if (dbar[i] > zero_tol) align[i] = 1.0 - std::abs(IF.dot(u)) / (un * IF.norm());
  });
  QuaternionicReport r;
  r.min_dbar_norm = *std::min_element(dbar.begin(), dbar.end());
  const double max_dbar = *std::max_element(dbar.begin(), dbar.end());
  r.degenerate = max_dbar <= zero_tol;
  r.alignment = r.degenerate ? 1.0 : std::max(0.0, *std::max_element(align.begin(), align.end()));
  if (r.degenerate) return r;

  // Winding of the coefficient <u, I F> around separated near-zeros (closed-form lifts only).
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < n; ++i) {
    if (dbar[i] > zero_tol) continue;
    ++r.near_zeros;
    const auto& s = domain.samples[i];
    bool seen = false;
    for (auto c : centers) {
      const auto& t = domain.samples[c];
      if (t.chart == s.chart && std::hypot(t.x - s.x, t.y - s.y) < 0.2) seen = true;
    }
    if (!seen) centers.push_back(i);
  }
  for (auto c : centers) {
    const auto& s = domain.samples[c];
    constexpr int steps = 128;
    constexpr double radius = 0.05;
    double turn = 0.0;
    cplx prev = 0.0;
    for (int k = 0; k <= steps; ++k) {
      DomainSample q = s;
      q.x += radius * std::cos(2.0 * kPi * k / steps);
      q.y += radius * std::sin(2.0 * kPi * k / steps);
      const LiftPoint p = evaluate_lift(map, domain, q);
      const cplx kappa = quaternionic_structure(p.F).dot(project_perp(p.Fzb, p.F)) / norm2(p.F);
      if (k > 0) turn += std::arg(kappa / prev);
      prev = kappa;
    }
    const int w = static_cast<int>(std::lround(turn / (2.0 * kPi)));
    r.zero_windings.push_back(w);
    if (w % 2 != 0) r.even_orders = false;
  }
  return r;
}

InducedMetric induced_metric(const HomogeneousMap& map, const Domain& domain, double zero_tol) {
  InducedMetric r;
  r.ratio = per_node(domain, [&](const DomainSample& s) {
    const LiftPoint p = evaluate_lift(map, domain, s);
    if (vanishes(p)) throw Error(ErrorKind::LiftVanishes, "lift vanishes on the grid");
    return dbar_density(p);
  });
  r.min = *std::min_element(r.ratio.begin(), r.ratio.end());
  r.max = *std::max_element(r.ratio.begin(), r.ratio.end());
  if (r.max <= zero_tol) throw Error(ErrorKind::HolomorphicMap, "dbar Psi vanishes identically");
  r.zeros = static_cast<int>(std::count_if(r.ratio.begin(), r.ratio.end(), [&](double v) { return v <= zero_tol; }));
  return r;
}

double weak_conformality(const HomogeneousMap& map, const Domain& domain) {
  const auto v = per_node(domain, [&](const DomainSample& s) {
    const LiftPoint p = evaluate_lift(map, domain, s);
    if (vanishes(p)) return 0.0;
    const cplx c = project_perp(p.Fzb, p.F).dot(p.Fz);  // <F_z, pi F_zbar>
    return 4.0 * std::abs(c) / (std::exp(2.0 * p.omega) * norm2(p.F));
  });
  return *std::max_element(v.begin(), v.end());
}

IndexReport index_consistency(const HomogeneousMap& map, const Domain& domain, double zero_tol) {
  if (domain.kind != DomainKind::Sphere) throw Error(ErrorKind::InvalidInput, "index check needs the sphere");
  const auto dbar = per_node(domain, [&](const DomainSample& s) {
    const LiftPoint p = evaluate_lift(map, domain, s);
    return vanishes(p) ? 0.0 : std::sqrt(dbar_density(p));
  });
  if (*std::max_element(dbar.begin(), dbar.end()) <= zero_tol)
    throw Error(ErrorKind::HolomorphicMap, "dbar Psi vanishes identically; the index is undefined");
  IndexReport r;
  r.degree = energies(map, domain).degree;
  r.predicted_index = -2 - 2 * r.degree;
  r.near_zeros = static_cast<int>(std::count_if(dbar.begin(), dbar.end(), [&](double v) { return v <= zero_tol; }));
  return r;
}

namespace {

int binomial(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

void require_linearly_full(const PolyVector& phi) {
  const int n = static_cast<int>(phi.size());
  for (const cplx z0 : {cplx(0.31, 0.17), cplx(-0.73, 0.41)}) {
    Eigen::MatrixXcd D(n, n);
    PolyVector d = phi;
    for (int k = 0; k < n; ++k) {
      for (int c = 0; c < n; ++c) D(c, k) = d[static_cast<std::size_t>(c)](z0);
      for (auto& p : d) p = p.dz();
    }
    const Eigen::VectorXd sv = D.jacobiSvd().singularValues();
    if (sv(n - 1) <= 1e-10 * sv(0))
      throw Error(ErrorKind::NotLinearlyFull, "the curve lies in a proper projective subspace");
  }
}

JetVector frame_member(const std::vector<PolyVector>& derivs, int j, const Jet& z) {
  std::vector<JetVector> frame;
  for (int i = 0; i <= j; ++i) {
    JetVector v;
    for (const auto& p : derivs[static_cast<std::size_t>(i)]) v.push_back(p(z));
    for (const auto& prev : frame) {
      const Jet c = hdot(v, prev) / hnorm2(prev);
      for (std::size_t k = 0; k < v.size(); ++k) v[k] -= c * prev[k];
    }
    frame.push_back(std::move(v));
  }
  return frame.back();
}

std::vector<PolyVector> derivative_table(const PolyVector& phi, int j) {
  std::vector<PolyVector> t{phi};
  for (int i = 1; i <= j; ++i) {
    PolyVector d;
    for (const auto& p : t.back()) d.push_back(p.dz());
    t.push_back(d);
  }
  return t;
}

}  // namespace

HomogeneousMap frenet_frame(const PolyVector& phi, int j) {
  const int n = static_cast<int>(phi.size()) - 1;
  if (n < 1) throw Error(ErrorKind::InvalidInput, "curve needs at least two components");
  if (j < 0 || j > n) throw Error(ErrorKind::InvalidInput, "frame index out of range");
  for (const auto& p : phi)
    if (!p.holomorphic()) throw Error(ErrorKind::InvalidInput, "Frenet frames need a holomorphic curve");
  require_linearly_full(phi);
  const auto d0 = derivative_table(phi, j);
  const auto d1 = derivative_table(chart_one_form(phi), j);
  HomogeneousMap m;
  m.n = n;
  m.name = "frenet_" + std::to_string(j);
  m.lift = [d0, d1, j](int chart, double x, double y) {
    return frame_member(chart == 0 ? d0 : d1, j, Jet::coordinate_z(cplx(x, y)));
  };
  return m;
}

VeroneseData veronese(int m) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "Veronese index must be positive");
  VeroneseData v;
  v.m = m;
  const int n = 2 * m - 1;
  for (int j = 0; j <= n; ++j) v.phi.push_back(Polynomial::monomial(j, 0, std::sqrt(static_cast<double>(binomial(n, j)))));
  v.A = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  for (int j = 0; j < m; ++j) {
    v.A(2 * j, j) = (j % 2 == 0) ? 1.0 : -1.0;
    v.A(2 * j + 1, n - j) = 1.0;
  }
  v.holomorphic = polynomial_map(v.phi, "veronese_" + std::to_string(m));
  v.psi = transformed(v.A, frenet_frame(v.phi, m));
  v.psi.name = "veronese_psi_" + std::to_string(m);
  return v;
}

double line_distance(const HomogeneousMap& a, const HomogeneousMap& b, const Domain& domain) {
  const auto v = per_node(domain, [&](const DomainSample& s) {
    const LiftPoint p = evaluate_lift(a, domain, s), q = evaluate_lift(b, domain, s);
    if (vanishes(p) || vanishes(q)) return 0.0;
    return 1.0 - std::abs(q.F.dot(p.F)) / (p.F.norm() * q.F.norm());
  });
  return std::max(0.0, *std::max_element(v.begin(), v.end()));
}

double chart_overlap_residual(const HomogeneousMap& map, const Domain& domain, double band) {
  if (domain.kind != DomainKind::Sphere) return 0.0;
  const auto v = per_node(domain, [&](const DomainSample& s) {
    const double r = std::hypot(s.x, s.y);
    // |cos theta| = |1 - r^2|/(1 + r^2) in either chart
    if (std::abs(1.0 - r * r) / (1.0 + r * r) > band) return 0.0;
    DomainSample t = s;
    t.chart = 1 - s.chart;
    std::tie(t.x, t.y) = other_chart(s.x, s.y);
    const auto [a10, a01] = energy_densities(map, domain, s);
    const auto [b10, b01] = energy_densities(map, domain, t);
    const LiftPoint p = evaluate_lift(map, domain, s), q = evaluate_lift(map, domain, t);
    const double line = 1.0 - std::abs(q.F.dot(p.F)) / (p.F.norm() * q.F.norm());
    return std::max({std::abs(a10 - b10) / (1.0 + a10), std::abs(a01 - b01) / (1.0 + a01), line});
  });
  return *std::max_element(v.begin(), v.end());
}

}  // namespace spindirac
