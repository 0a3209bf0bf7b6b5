#include "spindirac/conformal_opt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spindirac/errors.hpp"
#include "spindirac/minimax.hpp"
#include "spindirac/rng.hpp"

namespace spindirac {

const char* status_name(OptStatus s) {
  switch (s) {
    case OptStatus::Converged: return "converged";
    case OptStatus::StepLimit: return "step_limit";
    case OptStatus::LineSearchStall: return "line_search_stall";
  }
  return "unknown";
}

namespace {

struct Window {
  int K1 = 1;
  int K2 = 1;
};

Window window_for(const FourierField& omega, int K1, int K2) {
  Window w;
  w.K1 = K1 >= 0 ? K1 : std::max(1, omega.max_index1());
  w.K2 = K2 >= 0 ? K2 : std::max(1, omega.max_index2());
  return w;
}

// Average density over an M-orthonormal basis of the lambda_1 cluster, against dv0.
std::vector<double> cluster_density(const TorusSolution& sol, const Cluster& cl) {
  std::vector<double> rho(sol.grid.size(), 0.0);
  for (int i = cl.begin; i < cl.end; ++i) {
    const auto d = spinor_density(sol, sol.spinors[static_cast<std::size_t>(i)]);
    for (std::size_t k = 0; k < rho.size(); ++k) rho[k] += d[k];
  }
  for (double& r : rho) r /= cl.size();
  return rho;
}

FourierField gradient_from(const TorusSolution& sol, const FourierField& omega, const Window& w) {
  const Cluster cl = sol.lambda1_cluster();
  const double lbar = sol.lambda1_bar();
  const auto rho = cluster_density(sol, cl);
  std::vector<double> G(rho.size());
  for (std::size_t k = 0; k < G.size(); ++k)
    G[k] = lbar * (sol.exp_omega[k] * sol.exp_omega[k] / sol.area - rho[k]);
  const int Q1 = sol.grid.Q1, Q2 = sol.grid.Q2;
  if (2 * w.K1 >= Q1 || 2 * w.K2 >= Q2)
    throw Error(ErrorKind::InvalidInput, "descent window exceeds the quadrature grid");
  FourierField f = FourierField::from_samples(sol.basis.geometry, G, Q1, Q2, w.K1, w.K2);
  f.N1 = omega.N1;
  f.N2 = omega.N2;
  f.coeffs.erase({0, 0});  // mean zero up to rounding
  return f;
}

double norm_of(const FourierField& f) { return std::sqrt(std::max(0.0, f.inner(f))); }

}  // namespace

FourierField renormalize_area(const FourierField& omega, const TorusBasis& basis) {
  const QuadratureGrid grid = quadrature_grid(omega, basis);
  const auto s = omega.sample(grid.Q1, grid.Q2);
  double acc = 0.0;
  for (double v : s) acc += std::exp(2.0 * v);
  const double ratio = acc / static_cast<double>(s.size());  // area / b
  FourierField r = omega;
  r.add_constant(-0.5 * std::log(ratio));
  return r;
}

FourierField gradient(const TorusGeometry& geometry, const FourierField& omega, double cutoff, int K1,
                      int K2) {
  const TorusSolution sol = solve_conformal(geometry, omega, cutoff, true);
  return gradient_from(sol, omega, window_for(omega, K1, K2));
}

OptState minimize(const TorusGeometry& geometry, const FourierField& omega0, const OptOptions& opt) {
  if (opt.max_steps < 0 || opt.tol <= 0.0) throw Error(ErrorKind::InvalidInput, "invalid optimizer settings");
  const auto& sp = opt.step;
  if (!(sp.initial > 0.0) || !(sp.shrink > 0.0 && sp.shrink < 1.0) || !(sp.sufficient_decrease > 0.0))
    throw Error(ErrorKind::InvalidInput, "invalid step policy");
  const Window w = window_for(omega0, opt.K1, opt.K2);
  const TorusBasis basis = make_torus_basis(geometry, opt.cutoff);

  OptState st;
  st.geometry = geometry;
  // Keep every window mode present so the quadrature grid stays fixed along the run.
  FourierField omega = omega0;
  for (int n1 = -w.K1; n1 <= w.K1; ++n1)
    for (int n2 = -w.K2; n2 <= w.K2; ++n2) omega.coeffs[{n1, n2}] += 0.0;
  omega = renormalize_area(omega, basis);

  TorusSolution sol = solve_conformal(geometry, omega, opt.cutoff, true);
  double f = sol.lambda1_bar();
  FourierField G = gradient_from(sol, omega, w);
  double gn = norm_of(G);
  st.min_lambda1_bar = f;
  st.trace.push_back({0, f, sol.area, gn, omega.variance(sol.grid.Q1, sol.grid.Q2), 0.0});

  double step = sp.initial;
  st.status = OptStatus::StepLimit;
  for (int it = 1;; ++it) {
    if (gn < opt.tol) {
      st.status = OptStatus::Converged;
      break;
    }
    if (it > opt.max_steps) break;
    double s = step;
    bool accepted = false;
    FourierField trial;
    double ft = 0.0;
    for (int bt = 0; bt <= sp.max_backtracks; ++bt, s *= sp.shrink) {
      trial = renormalize_area(omega + G * (-s), basis);
      ft = solve_conformal(geometry, trial, opt.cutoff, false).lambda1_bar();
      st.min_lambda1_bar = std::min(st.min_lambda1_bar, ft);
      if (ft <= f - sp.sufficient_decrease * s * gn * gn) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      st.status = OptStatus::LineSearchStall;
      std::ostringstream os;
      os << "no sufficient decrease after " << sp.max_backtracks << " backtracks at iteration " << it
         << " (gradient norm " << gn << ")";
      st.message = os.str();
      break;
    }
    omega = trial;
    sol = solve_conformal(geometry, omega, opt.cutoff, true);
    f = sol.lambda1_bar();
    G = gradient_from(sol, omega, w);
    gn = norm_of(G);
    ++st.accepted;
    st.trace.push_back({it, f, sol.area, gn, omega.variance(sol.grid.Q1, sol.grid.Q2), s});
    step = std::min(s * sp.grow, sp.max_step);
  }
  st.omega = omega;
  st.lambda1_bar = f;
  st.gradient_norm = gn;
  st.variance = st.trace.back().variance;
  if (st.message.empty()) st.message = status_name(st.status);
  return st;
}

FourierField random_torus_factor(const TorusGeometry& geometry, double amplitude, int K1, int K2,
                                 std::uint64_t seed, std::uint64_t stream) {
  if (amplitude < 0.0 || K1 < 0 || K2 < 0) throw Error(ErrorKind::InvalidInput, "invalid perturbation window");
  Rng rng = Rng(seed).split(stream);
  FourierField f = FourierField::zero(geometry);
  for (int n2 = 0; n2 <= K2; ++n2)
    for (int n1 = -K1; n1 <= K1; ++n1) {
      if (n2 == 0 && n1 <= 0) continue;
      const double c = rng.uniform(-1.0, 1.0);
      f.add_cosine(n1, n2, c, rng.uniform(0.0, 2.0 * std::numbers::pi));
    }
  const double target = amplitude * (0.5 + 0.5 * (1.0 - rng.uniform()));
  double sup = 0.0;
  for (double v : f.sample(32, 32)) sup = std::max(sup, std::abs(v));
  return sup > 0.0 ? f * (target / sup) : f;
}

CriticalityReport criticality_residual(const TorusGeometry& geometry, const FourierField& omega,
                                       double cutoff) {
  const TorusSolution sol = solve_conformal(geometry, omega, cutoff, true);
  const Cluster cl = sol.lambda1_cluster();
  const int m = cl.size();
  const int K = static_cast<int>(sol.grid.size());
  Eigen::MatrixXd F(m, K);
  for (int i = 0; i < m; ++i) {
    const auto d = spinor_density(sol, sol.spinors[static_cast<std::size_t>(cl.begin + i)]);
    for (int k = 0; k < K; ++k) {
      const double e = sol.exp_omega[static_cast<std::size_t>(k)];
      F(i, k) = sol.area * d[static_cast<std::size_t>(k)] / (e * e);  // area * |psi|_g^2
    }
  }
  const MinimaxResult mm = simplex_minimax(F);
  CriticalityReport r;
  r.residual = mm.residual;
  r.level = mm.level;
  r.multiplicity = m;
  r.combination.assign(mm.weights.data(), mm.weights.data() + m);
  return r;
}

}  // namespace spindirac
