#include "spindirac/dirac_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spindirac/errors.hpp"
#include "spindirac/parallel.hpp"
#include "spindirac/rng.hpp"

namespace spindirac {

namespace {
constexpr double kPi = std::numbers::pi;
}

double SphereBasis::phi(int l) const { return 2.0 * kPi * static_cast<double>(l) / n_phi; }

SphereBasis make_sphere_basis(int tjmax, int band, int n_theta, int n_phi) {
  if (tjmax < 1 || tjmax % 2 == 0) throw Error(ErrorKind::InvalidInput, "jmax must be a positive half-integer");
  if (band < 0) throw Error(ErrorKind::InvalidInput, "band must be non-negative");
  SphereBasis b;
  b.tjmax = tjmax;
  for (int tj = 1; tj <= tjmax; tj += 2)
    for (int tm = -tj; tm <= tj; tm += 2) b.index.push_back({tj, tm});
  if (n_theta <= 0) n_theta = tjmax + 2 * band + 16;
  if (n_phi <= 0) n_phi = 2 * (tjmax + 1) + 8 * band + 16;
  b.rule = gauss_legendre(n_theta);
  b.n_phi = n_phi;
  b.theta.resize(static_cast<std::size_t>(n_theta));
  for (int k = 0; k < n_theta; ++k) b.theta[k] = std::acos(b.rule.nodes[k]);

  const int n = b.size();
  for (int s = 0; s < 2; ++s) {
    const int ts = s == 0 ? -1 : 1;  // second index of d is -s
    b.table[s].assign(static_cast<std::size_t>(n_theta) * n, 0.0);
    for (int k = 0; k < n_theta; ++k) {
      for (int tm = -tjmax; tm <= tjmax; tm += 2) {
        const auto col = wigner_d_column(tm, ts, tjmax, b.theta[k]);
        const int tj0 = std::max(std::abs(tm), 1);
        for (int a = 0; a < n; ++a) {
          const auto& id = b.index[a];
          if (id.tm != tm) continue;
          const double N = std::sqrt((id.tj + 1.0) / (4.0 * kPi));
          b.table[s][static_cast<std::size_t>(k) * n + a] = N * col[static_cast<std::size_t>((id.tj - tj0) / 2)];
        }
      }
    }
  }
  return b;
}

SphereConformalFactor SphereConformalFactor::zero(int band) {
  SphereConformalFactor f;
  f.band = band;
  f.coeffs.assign(static_cast<std::size_t>((band + 1) * (band + 1)), 0.0);
  return f;
}

double SphereConformalFactor::value(double theta, double phi) const {
  double th = theta, ph = phi;
  if (!rotation.isIdentity(0.0)) {
    const Eigen::Vector3d x(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
    const Eigen::Vector3d y = rotation.transpose() * x;
    th = std::acos(std::clamp(y.z(), -1.0, 1.0));
    ph = std::atan2(y.y(), y.x());
  }
  double sum = 0.0;
  for (int m = 0; m <= band; ++m) {
    const auto col = wigner_d_column(2 * m, 0, 2 * band, th);
    for (int l = m; l <= band; ++l) {
      const double N = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi));
      const double d = col[static_cast<std::size_t>(l - m)];
      if (m == 0) {
        sum += coeff(l, 0) * N * d;
      } else {
        const double r = std::sqrt(2.0) * N * d;
        sum += coeff(l, m) * r * std::cos(m * ph) + coeff(l, -m) * r * std::sin(m * ph);
      }
    }
  }
  return sum;
}

SphereConformalFactor SphereConformalFactor::rotated(const Eigen::Matrix3d& R) const {
  SphereConformalFactor f = *this;
  f.rotation = R * rotation;
  return f;
}

SphereDirac assemble_round(int tjmax) {
  SphereDirac d;
  d.basis = make_sphere_basis(tjmax, 0);
  const int n = d.basis.size();
  d.diag.resize(n);
  for (int a = 0; a < n; ++a) d.diag(a) = 0.5 * (d.basis.index[a].tj + 1);
  d.A = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    d.A(a, n + a) = d.diag(a);
    d.A(n + a, a) = d.diag(a);
  }
  return d;
}

namespace {

// Grid samples of e^{s omega}: [node * n_phi + l]
std::vector<double> sample_exp(const SphereConformalFactor& omega, const SphereBasis& b, double s) {
  const int nt = static_cast<int>(b.theta.size());
  std::vector<double> h(static_cast<std::size_t>(nt) * b.n_phi);
  for (int k = 0; k < nt; ++k)
    for (int l = 0; l < b.n_phi; ++l)
      h[static_cast<std::size_t>(k) * b.n_phi + l] = std::exp(s * omega.value(b.theta[k], b.phi(l)));
  return h;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> assemble_weights(const std::vector<double>& h,
                                                               const SphereBasis& b) {
  const int n = b.size(), nt = static_cast<int>(b.theta.size());
  const int dmax = b.tjmax;  // |m - m'| <= 2 jmax
  Eigen::MatrixXcd M[2] = {Eigen::MatrixXcd::Zero(n, n), Eigen::MatrixXcd::Zero(n, n)};
  std::vector<cplx> what(static_cast<std::size_t>(2 * dmax + 1));
  for (int k = 0; k < nt; ++k) {
    for (int dm = -dmax; dm <= dmax; ++dm) {
      cplx acc = 0.0;
      for (int l = 0; l < b.n_phi; ++l)
        acc += h[static_cast<std::size_t>(k) * b.n_phi + l] * std::polar(1.0, -dm * b.phi(l));
      what[static_cast<std::size_t>(dm + dmax)] = acc * (2.0 * kPi / b.n_phi);
    }
    const double w = b.rule.weights[k];
    for (int s = 0; s < 2; ++s) {
      const double* T = &b.table[s][static_cast<std::size_t>(k) * n];
      for (int a = 0; a < n; ++a) {
        if (T[a] == 0.0) continue;
        for (int c = 0; c < n; ++c) {
          const int dm = (b.index[a].tm - b.index[c].tm) / 2;
          M[s](a, c) += w * T[a] * T[c] * what[static_cast<std::size_t>(dm + dmax)];
        }
      }
    }
  }
  for (auto& m : M) m = (0.5 * (m + m.adjoint())).eval();
  return {M[0], M[1]};
}

double orthonormality_residual(const SphereBasis& b) {
  const int n = b.size(), nt = static_cast<int>(b.theta.size());
  double worst = 0.0;
  for (int s = 0; s < 2; ++s) {
    Eigen::MatrixXd G = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < nt; ++k) {
      const double* T = &b.table[s][static_cast<std::size_t>(k) * n];
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
          if (b.index[a].tm == b.index[c].tm) G(a, c) += 2.0 * kPi * b.rule.weights[k] * T[a] * T[c];
    }
    worst = std::max(worst, (G - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff());
  }
  // Azimuthal orthogonality needs n_phi above the largest m difference.
  if (b.n_phi <= b.tjmax) worst = std::max(worst, 1.0);
  return worst;
}

}  // namespace

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> sphere_weight_matrices(const SphereConformalFactor& omega,
                                                                     const SphereBasis& basis,
                                                                     double exponent) {
  return assemble_weights(sample_exp(omega, basis, exponent), basis);
}

double SphereSolution::lambda1() const {
  for (int i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) > 1e-9) return eigenvalues(i);
  throw Error(ErrorKind::ZeroEigenvalue, "no positive eigenvalue");
}

SphereSolution solve_conformal_sphere(const SphereConformalFactor& omega, int tjmax, bool want_vectors) {
  return solve_conformal_sphere(omega, make_sphere_basis(tjmax, omega.band), want_vectors);
}

SphereSolution solve_conformal_sphere(const SphereConformalFactor& omega, const SphereBasis& basis,
                                      bool want_vectors) {
  SphereSolution sol;
  sol.orthonormality_residual = orthonormality_residual(basis);
  if (sol.orthonormality_residual > 1e-8) {
    std::ostringstream os;
    os << "basis orthonormality residual " << sol.orthonormality_residual << " under the quadrature ("
       << basis.theta.size() << " x " << basis.n_phi << ")";
    throw Error(ErrorKind::QuadratureInsufficient, os.str());
  }
  const auto h = sample_exp(omega, basis, 1.0);
  const auto [Wp, Wm] = assemble_weights(h, basis);
  double area = 0.0;
  for (std::size_t k = 0; k < basis.theta.size(); ++k)
    for (int l = 0; l < basis.n_phi; ++l) {
      const double e = h[k * static_cast<std::size_t>(basis.n_phi) + l];
      area += basis.rule.weights[k] * (2.0 * kPi / basis.n_phi) * e * e;
    }
  sol.area = area;
  const int n = basis.size();
  Eigen::VectorXcd D(n);
  for (int a = 0; a < n; ++a) D(a) = 0.5 * (basis.index[a].tj + 1);
  const Eigen::MatrixXcd B = D.asDiagonal();
  auto eig = solve_chiral(B, Wp, Wm, want_vectors);
  sol.eigenvalues = eig.values;
  sol.vectors = std::move(eig.vectors);
  std::vector<double> vals(sol.eigenvalues.data(), sol.eigenvalues.data() + sol.eigenvalues.size());
  sol.report = group_spectrum(vals, area);
  return sol;
}

std::pair<cplx, cplx> sphere_spinor_at(const SphereBasis& b, const Eigen::VectorXcd& coeffs, double theta,
                                       double phi) {
  const int n = b.size();
  cplx u = 0.0, v = 0.0;
  for (int tm = -b.tjmax; tm <= b.tjmax; tm += 2) {
    const auto cp = wigner_d_column(tm, -1, b.tjmax, theta);
    const auto cm = wigner_d_column(tm, 1, b.tjmax, theta);
    const int tj0 = std::max(std::abs(tm), 1);
    const cplx e = std::polar(1.0, 0.5 * tm * phi);
    for (int a = 0; a < n; ++a) {
      const auto& id = b.index[a];
      if (id.tm != tm) continue;
      const double N = std::sqrt((id.tj + 1.0) / (4.0 * kPi));
      const auto i = static_cast<std::size_t>((id.tj - tj0) / 2);
      u += coeffs(a) * N * cp[i] * e;
      v += coeffs(n + a) * N * cm[i] * e;
    }
  }
  return {u, v};
}

SphereConformalFactor random_sphere_factor(int band, double sup_norm, std::uint64_t seed,
                                           std::uint64_t stream) {
  Rng root(seed);
  Rng rng = root.split(stream);
  auto f = SphereConformalFactor::zero(band);
  for (int l = 1; l <= band; ++l)
    for (int m = -l; m <= l; ++m) f.coeff(l, m) = rng.normal();
  double sup = 0.0;
  constexpr int nt = 48, np = 96;
  for (int i = 0; i <= nt; ++i)
    for (int j = 0; j < np; ++j)
      sup = std::max(sup, std::abs(f.value(kPi * i / nt, 2.0 * kPi * j / np)));
  if (sup > 0.0)
    for (auto& c : f.coeffs) c *= sup_norm / sup;
  return f;
}

BarReport bar_sweep(int count, int band, double amplitude, std::uint64_t seed, int tjmax, double tol,
                    bool include_zero) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "sample count must be positive");
  BarReport r;
  r.count = count;
  r.band = band;
  r.amplitude = amplitude;
  r.seed = seed;
  r.tjmax = tjmax;
  r.tol = tol;
  r.reference = 2.0 * std::sqrt(kPi);
  r.samples.resize(static_cast<std::size_t>(count));
  const SphereBasis basis = make_sphere_basis(tjmax, band);
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    SphereConformalFactor f = SphereConformalFactor::zero(band);
    if (!(include_zero && i == 0)) {
      Rng pick = Rng(seed).split(1000003ULL + i);
      const double sup = amplitude * (1.0 - pick.uniform());  // in (0, amplitude]
      f = random_sphere_factor(band, sup, seed, i);
    }
    const auto sol = solve_conformal_sphere(f, basis, false);
    BarSample s;
    s.lambda1_bar = sol.lambda1_bar();
    double mean = 0.0, sq = 0.0, sup = 0.0;
    std::size_t cnt = 0;
    for (std::size_t k = 0; k < basis.theta.size(); ++k)
      for (int l = 0; l < basis.n_phi; ++l) {
        const double w = f.value(basis.theta[k], basis.phi(l));
        mean += w;
        sq += w * w;
        sup = std::max(sup, std::abs(w));
        ++cnt;
      }
    mean /= static_cast<double>(cnt);
    s.variance = sq / static_cast<double>(cnt) - mean * mean;
    s.sup_omega = sup;
    s.equality_case = s.variance < 1e-6;
    s.violation = s.lambda1_bar < r.reference - tol;
    r.samples[i] = s;
  });
  r.min_value = r.samples[0].lambda1_bar;
  r.argmin = 0;
  for (int i = 0; i < count; ++i) {
    const auto& s = r.samples[static_cast<std::size_t>(i)];
    if (s.violation) ++r.violations;
    if (s.lambda1_bar < r.min_value) {
      r.min_value = s.lambda1_bar;
      r.argmin = i;
    }
  }
  return r;
}

}  // namespace spindirac
