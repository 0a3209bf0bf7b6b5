#include "spindirac/dirac_torus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spindirac/errors.hpp"

namespace spindirac {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int fft_friendly(int n) {
  for (int m = std::max(n, 2);; ++m) {
    if (m % 2) continue;
    int r = m;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

int wrap(int n, int Q) { return ((n % Q) + Q) % Q; }

double kernel_threshold(const Eigen::VectorXd& values) {
  const double scale = values.size() ? values.cwiseAbs().maxCoeff() : 1.0;
  return 1e-9 * std::max(1.0, scale);
}

}  // namespace

int TorusBasis::index_of(int n1, int n2) const {
  auto it = lookup.find({n1, n2});
  return it == lookup.end() ? -1 : it->second;
}

int TorusBasis::partner_index(int k) const {
  const auto& p = points[static_cast<std::size_t>(k)];
  return index_of(-p.n1 - geometry.character.chi1, -p.n2 - geometry.character.chi2);
}

TorusBasis make_torus_basis(const TorusGeometry& g, double cutoff) {
  if (!(cutoff > 0.0)) throw Error(ErrorKind::InvalidInput, "cutoff must be positive");
  TorusBasis basis;
  basis.geometry = g;
  basis.cutoff = cutoff;
  basis.points = enumerate_shifted_dual(g, cutoff);
  if (basis.points.empty()) {
    std::ostringstream os;
    os << "no shifted dual vector within cutoff " << cutoff;
    throw Error(ErrorKind::EmptyBasis, os.str());
  }
  basis.n1min = basis.n1max = basis.points[0].n1;
  basis.n2min = basis.n2max = basis.points[0].n2;
  for (int k = 0; k < basis.size(); ++k) {
    const auto& p = basis.points[static_cast<std::size_t>(k)];
    basis.lookup[{p.n1, p.n2}] = k;
    basis.n1min = std::min(basis.n1min, p.n1);
    basis.n1max = std::max(basis.n1max, p.n1);
    basis.n2min = std::min(basis.n2min, p.n2);
    basis.n2max = std::max(basis.n2max, p.n2);
  }
  return basis;
}

DiscreteDirac assemble_flat_dirac(const TorusGeometry& g, double cutoff) {
  DiscreteDirac d;
  d.basis = make_torus_basis(g, cutoff);
  const int n = d.basis.size();
  d.symbol.resize(n);
  for (int k = 0; k < n; ++k) {
    const auto& xi = d.basis.points[static_cast<std::size_t>(k)].xi;
    // 2 pi i xi(1, -i) = 2 pi (v + i u)
    d.symbol(k) = kTwoPi * cplx(xi.v, xi.u);
  }
  d.A = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) {
    d.A(k, n + k) = d.symbol(k);
    d.A(n + k, k) = std::conj(d.symbol(k));
  }
  d.M = Eigen::MatrixXcd::Identity(2 * n, 2 * n);
  return d;
}

QuadratureGrid quadrature_grid(const FourierField& omega, const TorusBasis& basis) {
  const int K1 = omega.max_index1(), K2 = omega.max_index2();
  const int s1 = basis.span1(), s2 = basis.span2();
  QuadratureGrid q;
  q.Q1 = fft_friendly(std::max({omega.N1, 2 * s1 + 2, s1 + std::max(8 * K1, 16) + 1}));
  q.Q2 = fft_friendly(std::max({omega.N2, 2 * s2 + 2, s2 + std::max(8 * K2, 16) + 1}));
  return q;
}

Eigen::MatrixXcd scalar_weight_matrix(const std::vector<double>& h, const QuadratureGrid& grid,
                                      const TorusBasis& basis) {
  if (h.size() != grid.size()) throw Error(ErrorKind::InvalidInput, "weight samples do not match grid");
  std::vector<cplx> hat(h.begin(), h.end());
  fft2(hat, grid.Q1, grid.Q2, true);
  const double inv = 1.0 / static_cast<double>(grid.size());
  const int n = basis.size();
  Eigen::MatrixXcd W(n, n);
  for (int k = 0; k < n; ++k) {
    const auto& pk = basis.points[static_cast<std::size_t>(k)];
    for (int l = 0; l < n; ++l) {
      const auto& pl = basis.points[static_cast<std::size_t>(l)];
      const int i = wrap(pk.n1 - pl.n1, grid.Q1), j = wrap(pk.n2 - pl.n2, grid.Q2);
      W(k, l) = hat[static_cast<std::size_t>(i) * grid.Q2 + j] * inv;
    }
  }
  return W;
}

namespace {

std::vector<std::string> aliasing_warnings(const FourierField& omega, const TorusBasis& basis,
                                           const QuadratureGrid& grid) {
  std::vector<std::string> w;
  if (omega.N1 < 2 * omega.max_index1() + 1 || omega.N2 < 2 * omega.max_index2() + 1) {
    std::ostringstream os;
    os << "AliasingRisk: field grid " << omega.N1 << "x" << omega.N2
       << " does not resolve its modes (max index " << omega.max_index1() << ", "
       << omega.max_index2() << ")";
    w.push_back(os.str());
  }
  if (grid.Q1 < 2 * basis.span1() + 2 || grid.Q2 < 2 * basis.span2() + 2)
    w.push_back("AliasingRisk: quadrature grid below twice the basis index span");
  return w;
}

std::vector<double> exp_samples(const FourierField& omega, const QuadratureGrid& grid, double s) {
  auto v = omega.sample(grid.Q1, grid.Q2);
  for (auto& x : v) x = std::exp(s * x);
  return v;
}

}  // namespace

Eigen::MatrixXcd weight_matrix(const FourierField& omega, const TorusBasis& basis, double s,
                               std::vector<std::string>* warnings) {
  if (!omega.hermitian()) throw Error(ErrorKind::InvalidInput, "omega must be a real field");
  const auto grid = quadrature_grid(omega, basis);
  if (warnings) {
    auto w = aliasing_warnings(omega, basis, grid);
    warnings->insert(warnings->end(), w.begin(), w.end());
  }
  const Eigen::MatrixXcd W = scalar_weight_matrix(exp_samples(omega, grid, s), grid, basis);
  const int n = basis.size();
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  M.topLeftCorner(n, n) = W;
  M.bottomRightCorner(n, n) = W;
  return M;
}

DiscreteDirac assemble_conformal_dirac(const TorusGeometry& g, const FourierField& omega,
                                       double cutoff) {
  DiscreteDirac d = assemble_flat_dirac(g, cutoff);
  d.M = weight_matrix(omega, d.basis, 1.0, &d.warnings);
  return d;
}

EigenDecomposition solve_pencil(const DiscreteDirac& d) { return solve_generalized(d.A, d.M, true); }

int TorusSolution::first_positive() const {
  const double thr = kernel_threshold(eigenvalues);
  for (int i = 0; i < eigenvalues.size(); ++i)
    if (eigenvalues(i) > thr) return i;
  throw Error(ErrorKind::ZeroEigenvalue, "no positive eigenvalue distinguishable from the kernel");
}

Cluster TorusSolution::lambda1_cluster(double rel_tol) const {
  const int i0 = first_positive();
  int j = i0 + 1;
  while (j < eigenvalues.size() && eigenvalues(j) - eigenvalues(i0) <= rel_tol * eigenvalues(i0)) ++j;
  return {i0, j, eigenvalues.segment(i0, j - i0).mean()};
}

double TorusSolution::lambda1() const { return eigenvalues(first_positive()); }

double TorusSolution::lambda1_bar() const { return lambda1() * std::sqrt(area); }

TorusSolution solve_conformal(const TorusGeometry& g, const FourierField& omega, double cutoff,
                              bool want_vectors) {
  if (!omega.hermitian()) throw Error(ErrorKind::InvalidInput, "omega must be a real field");
  TorusSolution sol;
  const DiscreteDirac flat = assemble_flat_dirac(g, cutoff);
  sol.basis = flat.basis;
  sol.grid = quadrature_grid(omega, sol.basis);
  sol.warnings = aliasing_warnings(omega, sol.basis, sol.grid);
  sol.exp_omega = exp_samples(omega, sol.grid, 1.0);
  sol.W = scalar_weight_matrix(sol.exp_omega, sol.grid, sol.basis);
  double a2 = 0.0;
  for (double e : sol.exp_omega) a2 += e * e;
  sol.area = g.area() * a2 / static_cast<double>(sol.grid.size());

  const Eigen::MatrixXcd B = flat.symbol.asDiagonal();
  const EigenDecomposition eig = solve_chiral(B, sol.W, sol.W, want_vectors);
  sol.eigenvalues = eig.values;
  const int n = sol.basis.size();
  if (want_vectors) {
    sol.spinors.resize(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < 2 * n; ++i) {
      auto& s = sol.spinors[static_cast<std::size_t>(i)];
      s.plus = eig.vectors.col(i).head(n);
      s.minus = eig.vectors.col(i).tail(n);
      s.eigenvalue = eig.values(i);
    }
  }
  std::vector<double> vals(eig.values.data(), eig.values.data() + eig.values.size());
  sol.report = group_spectrum(vals, sol.area, kGroupingTolerance, kernel_threshold(eig.values));
  return sol;
}

std::vector<cplx> synthesize(const Eigen::VectorXcd& coeffs, const TorusBasis& basis,
                             const QuadratureGrid& grid) {
  std::vector<cplx> data(grid.size(), 0.0);
  for (int k = 0; k < basis.size(); ++k) {
    const auto& p = basis.points[static_cast<std::size_t>(k)];
    data[static_cast<std::size_t>(wrap(p.n1, grid.Q1)) * grid.Q2 + wrap(p.n2, grid.Q2)] += coeffs(k);
  }
  fft2(data, grid.Q1, grid.Q2, false);
  const double s = 1.0 / std::sqrt(basis.geometry.area());
  for (auto& x : data) x *= s;
  return data;
}

std::vector<double> spinor_density(const TorusSolution& sol, const SpinorCoefficients& psi) {
  const auto f = synthesize(psi.plus, sol.basis, sol.grid);
  const auto g = synthesize(psi.minus, sol.basis, sol.grid);
  std::vector<double> rho(sol.grid.size());
  for (std::size_t i = 0; i < rho.size(); ++i)
    rho[i] = sol.exp_omega[i] * (std::norm(f[i]) + std::norm(g[i]));
  return rho;
}

double eigenvalue_derivative(const TorusSolution& sol, const FourierField& direction,
                             const SpinorCoefficients& psi) {
  const auto rho = spinor_density(sol, psi);
  const auto wd = direction.sample(sol.grid.Q1, sol.grid.Q2);
  const double b = sol.basis.geometry.area();
  const double cell = b / static_cast<double>(sol.grid.size());
  double norm = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < rho.size(); ++i) {
    norm += rho[i] * cell;
    acc += wd[i] * rho[i] * cell;
  }
  if (std::abs(norm - 1.0) > 1e-8) {
    std::ostringstream os;
    os << "eigenpair has weighted norm " << norm << ", expected 1";
    throw Error(ErrorKind::NotNormalized, os.str());
  }
  return -psi.eigenvalue * acc;
}

Eigen::MatrixXcd perturbation_matrix(const TorusSolution& sol, const FourierField& direction,
                                     const Cluster& cluster) {
  if (sol.spinors.empty()) throw Error(ErrorKind::InvalidInput, "solution has no eigenvectors");
  auto h = direction.sample(sol.grid.Q1, sol.grid.Q2);
  for (std::size_t i = 0; i < h.size(); ++i) h[i] *= sol.exp_omega[i];
  const Eigen::MatrixXcd Wd = scalar_weight_matrix(h, sol.grid, sol.basis);
  const int m = cluster.size();
  Eigen::MatrixXcd P(m, m);
  for (int i = 0; i < m; ++i) {
    const auto& a = sol.spinors[static_cast<std::size_t>(cluster.begin + i)];
    for (int j = 0; j < m; ++j) {
      const auto& c = sol.spinors[static_cast<std::size_t>(cluster.begin + j)];
      P(i, j) = -cluster.mean * (a.plus.dot(Wd * c.plus) + a.minus.dot(Wd * c.minus));
    }
  }
  return P;
}

SpinorCoefficients plane_wave_eigenspinor(const TorusBasis& basis, int k, int sign) {
  const int n = basis.size();
  SpinorCoefficients s;
  s.plus = Eigen::VectorXcd::Zero(n);
  s.minus = Eigen::VectorXcd::Zero(n);
  const auto& xi = basis.points[static_cast<std::size_t>(k)].xi;
  const cplx sym = kTwoPi * cplx(xi.v, xi.u);
  const double mod = std::abs(sym);
  if (mod == 0.0) {
    (sign > 0 ? s.plus : s.minus)(k) = 1.0;
    s.eigenvalue = 0.0;
    return s;
  }
  const double r = 1.0 / std::sqrt(2.0);
  s.plus(k) = r * sym / mod;
  s.minus(k) = sign > 0 ? r : -r;
  s.eigenvalue = sign > 0 ? mod : -mod;
  return s;
}

SpinorCoefficients quaternionic_partner(const TorusBasis& basis, const SpinorCoefficients& psi) {
  const int n = basis.size();
  SpinorCoefficients out;
  out.plus = Eigen::VectorXcd::Zero(n);
  out.minus = Eigen::VectorXcd::Zero(n);
  out.eigenvalue = psi.eigenvalue;
  for (int k = 0; k < n; ++k) {
    const int p = basis.partner_index(k);
    if (p < 0) throw Error(ErrorKind::InvalidInput, "basis is not symmetric under xi -> -xi");
    out.plus(k) = std::conj(psi.minus(p));
    out.minus(k) = -std::conj(psi.plus(p));
  }
  return out;
}

double eigen_residual(const DiscreteDirac& d, const SpinorCoefficients& psi) {
  Eigen::VectorXcd v(psi.plus.size() + psi.minus.size());
  v << psi.plus, psi.minus;
  return (d.A * v - psi.eigenvalue * (d.M * v)).norm();
}

}  // namespace spindirac
