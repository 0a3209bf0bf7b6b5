#include "spindirac/cpn_spinors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spindirac/errors.hpp"
#include "spindirac/parallel.hpp"

namespace spindirac {

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI(0.0, 1.0);

Jet plane_wave_jet(const DualVector& xi, double x, double y, double scale) {
  const cplx ix = 2.0 * kPi * kI * xi.u, iy = 2.0 * kPi * kI * xi.v;
  const cplx e = scale * std::exp(ix * x + iy * y);
  Jet t(e);
  t.x = ix * e;
  t.y = iy * e;
  t.xx = ix * ix * e;
  t.xy = ix * iy * e;
  t.yy = iy * iy * e;
  return t;
}

template <class F>
std::vector<double> per_node(const Domain& d, F&& f) {
  std::vector<double> out(d.samples.size());
  parallel_for(d.samples.size(), [&](std::size_t i) { out[i] = f(d.samples[i]); });
  return out;
}

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// Covariant derivatives and the form C(X, Y) = <X . nabla_Y psi, psi> in the z, zbar frame.
// Index 0 is d/dz, 1 is d/dzbar; entry [a][b] = C(e_a, e_b).
Eigen::Matrix2d q_tensor(const SpinorJet& s) {
  const cplx f = s.f.v, g = s.g.v;
  const cplx sz = -s.omega.dz(), szb = -s.omega.dzb();  // sigma = -omega
  // nabla_z psi and nabla_zbar psi as (first, second) components
  const cplx nz1 = s.f.dz() + f * sz, nz2 = s.g.dz();
  const cplx nzb1 = s.f.dzb(), nzb2 = s.g.dzb() + g * szb;
  // nabla along d/dx and d/dy
  const cplx nx1 = nz1 + nzb1, nx2 = nz2 + nzb2;
  const cplx ny1 = kI * (nz1 - nzb1), ny2 = kI * (nz2 - nzb2);
  auto C = [&](int X, cplx n1, cplx n2) {
    const cplx cz = -n1 * std::conj(g);   // C(d/dz, Y)
    const cplx czb = n2 * std::conj(f);   // C(d/dzbar, Y)
    return X == 0 ? cz + czb : kI * cz - kI * czb;
  };
  const cplx Cxx = C(0, nx1, nx2), Cxy = C(0, ny1, ny2), Cyx = C(1, nx1, nx2), Cyy = C(1, ny1, ny2);
  Eigen::Matrix2d Q;
  Q(0, 0) = Cxx.real();
  Q(1, 1) = Cyy.real();
  Q(0, 1) = Q(1, 0) = 0.5 * (Cxy + Cyx).real();
  return Q;
}

double density(const SpinorJet& s) {
  return std::exp(-s.omega.v.real()) * (std::norm(s.f.v) + std::norm(s.g.v));
}

}  // namespace

SpinorField torus_spinor_field(const TorusBasis& basis, const SpinorCoefficients& psi,
                               const FourierField& omega) {
  if (psi.plus.size() != basis.size() || psi.minus.size() != basis.size())
    throw Error(ErrorKind::InvalidInput, "coefficient vector does not match the basis");
  SpinorField field;
  field.name = "torus_spinor";
  field.lambda = psi.eigenvalue;
  const double scale = 1.0 / std::sqrt(basis.geometry.area());
  field.eval = [basis, psi, omega, scale](int, double x, double y) {
    SpinorJet s;
    for (int k = 0; k < basis.size(); ++k) {
      const cplx p = psi.plus(k), q = psi.minus(k);
      if (p == 0.0 && q == 0.0) continue;
      const Jet e = plane_wave_jet(basis.points[static_cast<std::size_t>(k)].xi, x, y, scale);
      s.f += p * e;
      s.g += q * e;
    }
    s.omega = fourier_jet(omega, x, y);
    return s;
  };
  return field;
}

HomogeneousMap map_from_fields(const std::vector<SpinorField>& fields, const std::string& name) {
  if (fields.empty()) throw Error(ErrorKind::InvalidInput, "no spinors given");
  HomogeneousMap m;
  m.n = 2 * static_cast<int>(fields.size()) - 1;
  m.name = name;
  m.lift = [fields](int chart, double x, double y) {
    JetVector F;
    for (const auto& f : fields) {
      const SpinorJet s = f.eval(chart, x, y);
      F.push_back(s.f);
      F.push_back(conj(s.g));
    }
    return F;
  };
  return m;
}

HomogeneousMap from_eigenspinors(const std::vector<SpinorCoefficients>& spinors, const TorusBasis& basis,
                                 const FourierField& omega, const Domain& domain) {
  if (spinors.empty()) throw Error(ErrorKind::InvalidInput, "no spinors given");
  const double lam = spinors.front().eigenvalue;
  if (std::abs(lam) < 1e-12) throw Error(ErrorKind::InvalidInput, "eigenspinor maps need lambda != 0");
  std::vector<SpinorField> fields;
  for (const auto& s : spinors) {
    if (std::abs(s.eigenvalue - lam) > 1e-8 * std::abs(lam)) {
      std::ostringstream os;
      os << "eigenvalues " << lam << " and " << s.eigenvalue << " differ";
      throw Error(ErrorKind::MixedEigenvalues, os.str());
    }
    fields.push_back(torus_spinor_field(basis, s, omega));
  }
  HomogeneousMap m = map_from_fields(fields, "torus_eigenspinor_map");
  const auto norms = per_node(domain, [&](const DomainSample& s) {
    double n2 = 0.0;
    for (const auto& j : m.lift(s.chart, s.x, s.y)) n2 += std::norm(j.v);
    return std::sqrt(n2);
  });
  const auto low = std::min_element(norms.begin(), norms.end());
  if (*low < kLiftFloor) {
    const auto& s = domain.samples[static_cast<std::size_t>(low - norms.begin())];
    std::ostringstream os;
    os << "spinors vanish simultaneously near (" << s.x << ", " << s.y << ")";
    throw Error(ErrorKind::CommonZeroOnGrid, os.str());
  }
  return m;
}

double eigenspinor_system_residual(const std::vector<SpinorField>& fields, const Domain& domain) {
  std::vector<double> res(domain.samples.size()), scale(domain.samples.size());
  parallel_for(domain.samples.size(), [&](std::size_t i) {
    const auto& d = domain.samples[i];
    double r = 0.0, sc = 0.0;
    for (const auto& fld : fields) {
      const SpinorJet s = fld.eval(d.chart, d.x, d.y);
      const double mu = 0.5 * fld.lambda * std::exp(s.omega.v.real());
      r = std::max({r, std::abs(s.f.dzb() + mu * s.g.v), std::abs(s.g.dz() - mu * s.f.v)});
      sc = std::max(sc, mu * (std::abs(s.f.v) + std::abs(s.g.v)));
    }
    res[i] = r;
    scale[i] = sc;
  });
  return max_of(res) / max_of(scale);
}

double great_circle_deviation(const HomogeneousMap& map, const Domain& domain) {
  if (map.n != 1) throw Error(ErrorKind::InvalidInput, "great-circle check needs a map into CP^1");
  return max_of(per_node(domain, [&](const DomainSample& s) {
    const JetVector F = map.lift(s.chart, s.x, s.y);
    const double a = std::norm(F[0].v), b = std::norm(F[1].v);
    return std::abs(a - b) / (a + b);
  }));
}

PartnerLines partner_line_residuals(const HomogeneousMap& map, const HomogeneousMap& partner,
                                    const Domain& domain) {
  HomogeneousMap I = map, cI = map;
  auto inner = map.lift;
  I.lift = [inner](int c, double x, double y) {
    const JetVector F = inner(c, x, y);
    JetVector r(F.size());
    for (std::size_t k = 0; k + 1 < F.size(); k += 2) {
      r[k] = -conj(F[k + 1]);
      r[k + 1] = conj(F[k]);
    }
    return r;
  };
  cI.lift = [inner](int c, double x, double y) {
    const JetVector F = inner(c, x, y);
    JetVector r(F.size());
    for (std::size_t k = 0; k + 1 < F.size(); k += 2) {
      r[k] = -F[k + 1];
      r[k + 1] = F[k];
    }
    return r;
  };
  return {line_distance(partner, I, domain), line_distance(partner, cI, domain)};
}

std::vector<SpinorField> spinors_from_map(const HomogeneousMap& map, double lambda) {
  if ((map.n + 1) % 2 != 0) throw Error(ErrorKind::EvenAmbientDimension, "map target must be CP^{2m-1}");
  const int m = (map.n + 1) / 2;
  // Shared evaluation of the rescaled lift; each field picks its pair of components.
  auto lift = map.lift;
  auto rescaled = [lift](int chart, double x, double y) {
    const JetVector Fh = lift(chart, x, y);
    JetVector Fzb, IF(Fh.size());
    for (const auto& c : Fh) Fzb.push_back(dzb_jet(c));
    for (std::size_t k = 0; k + 1 < Fh.size(); k += 2) {
      IF[k] = -conj(Fh[k + 1]);
      IF[k + 1] = conj(Fh[k]);
    }
    const Jet n2 = real(hnorm2(Fh));
    const Jet kappa = hdot(Fzb, IF) / n2;
    const Jet omega = round_sphere_omega(x, y);
    const Jet modulus = exp(0.5 * omega) / sqrt(n2);
    const Jet phase = sqrt(conj(kappa)) / sqrt(sqrt(real(kappa * conj(kappa))));
    const Jet h = modulus * phase;
    JetVector F;
    for (const auto& c : Fh) F.push_back(h * c);
    return std::make_pair(F, omega);
  };
  std::vector<SpinorField> out;
  for (int j = 0; j < m; ++j) {
    SpinorField f;
    f.name = "map_spinor_" + std::to_string(j);
    f.lambda = lambda;
    f.eval = [rescaled, j](int chart, double x, double y) {
      const auto [F, omega] = rescaled(chart, x, y);
      SpinorJet s;
      s.f = F[static_cast<std::size_t>(2 * j)];
      s.g = conj(F[static_cast<std::size_t>(2 * j + 1)]);
      s.omega = omega;
      return s;
    };
    out.push_back(f);
  }
  return out;
}

QTensorField energy_momentum(const SpinorField& field, const Domain& domain, double eigen_tol) {
  const std::size_t n = domain.samples.size();
  QTensorField out;
  out.Q.resize(n);
  std::vector<double> tr(n), ev(n), scale(n), sym(n), amp(n);
  parallel_for(n, [&](std::size_t i) {
    const auto& d = domain.samples[i];
    const SpinorJet s = field.eval(d.chart, d.x, d.y);
    const double w = s.omega.v.real(), lam = field.lambda;
    out.Q[i] = q_tensor(s);
    const double rho = density(s);
    tr[i] = std::abs(std::exp(-2.0 * w) * out.Q[i].trace() - lam * rho);
    scale[i] = std::abs(lam) * rho;
    ev[i] = std::abs(2.0 * std::exp(-w) * s.g.dz() - lam * s.f.v) +
            std::abs(-2.0 * std::exp(-w) * s.f.dzb() - lam * s.g.v);
    sym[i] = std::abs(out.Q[i](0, 1) - out.Q[i](1, 0));
    amp[i] = std::abs(lam) * (std::abs(s.f.v) + std::abs(s.g.v));
  });
  const double sc = std::max(max_of(scale), 1e-300);
  out.eigen_residual = max_of(ev) / std::max(max_of(amp), 1e-300);
  if (out.eigen_residual > eigen_tol) {
    std::ostringstream os;
    os << "Dirac equation residual " << out.eigen_residual << " exceeds " << eigen_tol;
    throw Error(ErrorKind::NotAnEigenspinor, os.str());
  }
  out.trace_residual = max_of(tr) / sc;
  out.symmetry_residual = max_of(sym);
  return out;
}

double global_criticality_residual(const std::vector<SpinorField>& fields, const Domain& domain) {
  if (fields.empty()) throw Error(ErrorKind::InvalidInput, "no spinors given");
  const double lam = fields.front().lambda;
  return max_of(per_node(domain, [&](const DomainSample& d) {
    Eigen::Matrix2d S = Eigen::Matrix2d::Zero();
    double w = 0.0;
    for (const auto& f : fields) {
      const SpinorJet s = f.eval(d.chart, d.x, d.y);
      S += q_tensor(s);
      w = s.omega.v.real();
    }
    const double target = 0.5 * lam * std::exp(2.0 * w);
    return (S - target * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() / std::abs(target);
  }));
}

double sum_of_squares_variation(const std::vector<SpinorField>& fields, const Domain& domain) {
  const auto v = per_node(domain, [&](const DomainSample& d) {
    double r = 0.0;
    for (const auto& f : fields) r += density(f.eval(d.chart, d.x, d.y));
    return r;
  });
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  return (max_of(v) - *std::min_element(v.begin(), v.end())) / mean;
}

}  // namespace spindirac
