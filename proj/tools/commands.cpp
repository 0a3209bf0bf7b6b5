#include "commands.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spindirac/conformal_opt.hpp"
#include "spindirac/cpn_harmonic.hpp"
#include "spindirac/cpn_spinors.hpp"
#include "spindirac/dirac_sphere.hpp"
#include "spindirac/dirac_torus.hpp"
#include "spindirac/errors.hpp"
#include "spindirac/exact_spectrum.hpp"

namespace spindirac::cli {

namespace {

constexpr double kPi = std::numbers::pi;

json entries_json(const std::vector<SpectrumEntry>& entries) {
  json arr = json::array();
  for (const auto& e : entries)
    arr.push_back({{"value", e.value}, {"complex_mult", e.complex_mult}, {"quaternionic_mult", e.quaternionic_mult}});
  return arr;
}

TorusGeometry torus_from(const std::vector<double>& ab, const std::vector<int>& spin) {
  if (ab.size() != 2) throw Error(ErrorKind::InvalidInput, "--torus expects two numbers a b");
  if (spin.size() != 2) throw Error(ErrorKind::InvalidInput, "--spin expects two bits");
  return TorusGeometry::make(ab[0], ab[1], spin[0], spin[1]);
}

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size() && item.find_first_not_of(' ', used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "cannot parse number '" + item + "' in '" + s + "'");
    }
  }
  return out;
}

bool is_integer(double v) { return std::abs(v - std::round(v)) < 1e-12; }

FourierField torus_modes(const TorusGeometry& g, const std::vector<std::string>& modes) {
  FourierField f = FourierField::zero(g);
  for (const auto& m : modes) {
    const auto v = split_numbers(m);
    if ((v.size() != 3 && v.size() != 4) || !is_integer(v[0]) || !is_integer(v[1]))
      throw Error(ErrorKind::InvalidInput, "torus mode must be n1,n2,amplitude[,phase]: '" + m + "'");
    f.add_cosine(static_cast<int>(std::lround(v[0])), static_cast<int>(std::lround(v[1])), v[2],
                 v.size() == 4 ? v[3] : 0.0);
  }
  return f;
}

SphereConformalFactor sphere_modes(const std::vector<std::string>& modes) {
  int band = 0;
  std::vector<std::vector<double>> parsed;
  for (const auto& m : modes) {
    const auto v = split_numbers(m);
    if (v.size() != 3 || !is_integer(v[0]) || !is_integer(v[1]) || v[0] < 0 || std::abs(v[1]) > v[0])
      throw Error(ErrorKind::InvalidInput, "sphere mode must be l,m,coefficient with |m| <= l: '" + m + "'");
    band = std::max(band, static_cast<int>(std::lround(v[0])));
    parsed.push_back(v);
  }
  auto f = SphereConformalFactor::zero(band);
  for (const auto& v : parsed) f.coeff(static_cast<int>(std::lround(v[0])), static_cast<int>(std::lround(v[1]))) += v[2];
  return f;
}

int doubled_j(double jmax) {
  const double t = 2.0 * jmax;
  if (!is_integer(t) || std::lround(t) % 2 == 0 || t < 1.0)
    throw Error(ErrorKind::InvalidInput, "--jmax must be a positive half-integer");
  return static_cast<int>(std::lround(t));
}

double flat_value(const TorusGeometry& g) {
  return (g.character.trivial() ? 2.0 * kPi : kPi) / std::sqrt(g.lattice.b);
}

double b_threshold(const TorusGeometry& g) { return g.character.trivial() ? 2.0 * kPi : 0.5 * kPi; }

json geometry_json(const TorusGeometry& g) {
  return {{"a", g.lattice.a}, {"b", g.lattice.b}, {"spin", {g.character.chi1, g.character.chi2}}};
}

}  // namespace

Polynomial parse_polynomial(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorKind::InvalidInput, "empty polynomial");
  Polynomial p;
  std::size_t i = 0;
  auto fail = [&](const std::string& why) {
    throw Error(ErrorKind::InvalidInput, "cannot parse polynomial '" + text + "': " + why);
  };
  while (i < s.size()) {
    double sign = 1.0;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1.0;
      ++i;
    }
    cplx coeff = sign;
    int pz = 0, pzb = 0;
    bool any = false;
    while (i < s.size() && s[i] != '+' && s[i] != '-') {
      if (s[i] == '*') {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.') {
        std::size_t used = 0;
        const double v = std::stod(s.substr(i), &used);
        i += used;
        if (i < s.size() && s[i] == 'i') {
          coeff *= cplx(0.0, v);
          ++i;
        } else {
          coeff *= v;
        }
        any = true;
      } else if (s.compare(i, 4, "sqrt") == 0) {
        i += 4;
        std::size_t used = 0;
        const double v = std::stod(s.substr(i), &used);
        i += used;
        coeff *= std::sqrt(v);
        any = true;
      } else if (s[i] == 'i') {
        coeff *= cplx(0.0, 1.0);
        ++i;
        any = true;
      } else if (s[i] == 'z') {
        const bool bar = i + 1 < s.size() && s[i + 1] == 'b';
        i += bar ? 2 : 1;
        int e = 1;
        if (i < s.size() && s[i] == '^') {
          ++i;
          std::size_t used = 0;
          e = std::stoi(s.substr(i), &used);
          if (e < 0) fail("negative exponent");
          i += used;
        }
        (bar ? pzb : pz) += e;
        any = true;
      } else {
        fail(std::string("unexpected character '") + s[i] + "'");
      }
    }
    if (!any) fail("empty term");
    p = p + Polynomial::monomial(pz, pzb, coeff);
  }
  return p;
}

Outcome run_spectrum(const SpectrumArgs& a) {
  Outcome out;
  out.config = {{"command", "spectrum"}, {"count", a.count}};
  if (a.count < 1) throw Error(ErrorKind::InvalidInput, "--count must be positive");
  SpectrumReport rep;
  if (a.sphere) {
    out.config["sphere"] = true;
    rep = sphere_spectrum(a.count);
    out.results["kernel_quaternionic_dim"] = 0;
  } else {
    const TorusGeometry g = torus_from(a.torus, a.spin);
    out.config["torus"] = geometry_json(g);
    const ModuliCheck mc = validate_moduli(g);
    out.diagnostics["moduli"] = {{"normalized", mc.ok}, {"message", mc.diagnostic}};
    rep = torus_spectrum(g, a.count);
    out.results["kernel_quaternionic_dim"] = kernel_dimension(g);
  }
  auto pos = rep.positive();
  if (static_cast<int>(pos.size()) > a.count) pos.resize(static_cast<std::size_t>(a.count));
  out.results["area"] = rep.area;
  out.results["eigenvalues"] = entries_json(pos);
  out.results["lambda1"] = pos.front().value;
  out.results["lambda1_bar"] = normalized(rep, 1);
  Table t{{"level", "value", "complex_mult", "quaternionic_mult"}, {}};
  for (std::size_t i = 0; i < pos.size(); ++i)
    t.rows.push_back({static_cast<double>(i + 1), pos[i].value, static_cast<double>(pos[i].complex_mult),
                      static_cast<double>(pos[i].quaternionic_mult)});
  out.table = t;
  out.plot_title = "Positive Dirac eigenvalues";
  out.plot_x = "level";
  out.plot_y = {"value"};
  return out;
}

Outcome run_discretize(const DiscretizeArgs& a) {
  Outcome out;
  out.config = {{"command", "discretize"}, {"modes", a.modes}, {"count", a.count}};
  if (a.count < 1) throw Error(ErrorKind::InvalidInput, "--count must be positive");
  std::vector<SpectrumEntry> pos;
  if (a.sphere) {
    const int tj = doubled_j(a.jmax);
    out.config["sphere"] = true;
    out.config["jmax"] = a.jmax;
    const auto omega = sphere_modes(a.modes);
    const auto sol = solve_conformal_sphere(omega, tj);
    pos = sol.report.positive();
    out.results["area"] = sol.area;
    out.results["lambda1"] = sol.lambda1();
    out.results["lambda1_bar"] = sol.lambda1_bar();
    out.diagnostics["orthonormality_residual"] = sol.orthonormality_residual;
    out.diagnostics["basis_size"] = 2 * static_cast<int>(sol.eigenvalues.size() / 2);
  } else {
    const TorusGeometry g = torus_from(a.torus, a.spin);
    out.config["torus"] = geometry_json(g);
    out.config["cutoff"] = a.cutoff;
    const auto omega = torus_modes(g, a.modes);
    const auto sol = solve_conformal(g, omega, a.cutoff, false);
    pos = sol.report.positive();
    // levels above half the cutoff are truncation dominated
    pos.erase(std::remove_if(pos.begin(), pos.end(),
                             [&](const SpectrumEntry& e) { return e.value > kPi * a.cutoff; }),
              pos.end());
    out.results["area"] = sol.area;
    out.results["lambda1"] = sol.lambda1();
    out.results["lambda1_bar"] = sol.lambda1_bar();
    out.diagnostics["basis_size"] = sol.basis.size();
    out.diagnostics["grid"] = {sol.grid.Q1, sol.grid.Q2};
    out.diagnostics["warnings"] = sol.warnings;
  }
  if (static_cast<int>(pos.size()) > a.count) pos.resize(static_cast<std::size_t>(a.count));
  out.results["eigenvalues"] = entries_json(pos);
  Table t{{"level", "value", "complex_mult", "quaternionic_mult"}, {}};
  for (std::size_t i = 0; i < pos.size(); ++i)
    t.rows.push_back({static_cast<double>(i + 1), pos[i].value, static_cast<double>(pos[i].complex_mult),
                      static_cast<double>(pos[i].quaternionic_mult)});
  out.table = t;
  out.plot_title = "Discretized positive eigenvalues";
  out.plot_x = "level";
  out.plot_y = {"value"};
  return out;
}

namespace {

json trace_summary(const OptState& st, const TorusGeometry& g) {
  return {{"status", status_name(st.status)},
          {"message", st.message},
          {"accepted_steps", st.accepted},
          {"lambda1_bar", st.lambda1_bar},
          {"flat_value", flat_value(g)},
          {"gradient_norm", st.gradient_norm},
          {"omega_variance", st.variance},
          {"min_lambda1_bar", st.min_lambda1_bar}};
}

}  // namespace

Outcome run_optimize(const OptimizeArgs& a) {
  const TorusGeometry g = TorusGeometry::make(a.a, a.b, a.spin.at(0), a.spin.at(1));
  Outcome out;
  out.config = {{"command", "optimize"}, {"torus", geometry_json(g)}, {"modes", a.modes},
                {"random_amplitude", a.random_amplitude}, {"seed", a.seed}, {"max_steps", a.max_steps},
                {"tol", a.tol}, {"cutoff", a.cutoff}, {"initial_step", a.step}};
  const ModuliCheck mc = validate_moduli(g);
  if (!mc.ok) throw Error(ErrorKind::InvalidInput, mc.diagnostic);
  FourierField omega0 = torus_modes(g, a.modes);
  if (a.random_amplitude > 0.0) omega0 = omega0 + random_torus_factor(g, a.random_amplitude, 1, 2, a.seed, 0);
  OptOptions opt;
  opt.max_steps = a.max_steps;
  opt.tol = a.tol;
  opt.cutoff = a.cutoff;
  opt.step.initial = a.step;
  const OptState st = minimize(g, omega0, opt);
  out.results = trace_summary(st, g);
  out.results["assertion_mode"] = g.lattice.b > b_threshold(g);
  json coeffs = json::array();
  for (const auto& [n, c] : st.omega.coeffs)
    if (std::abs(c) > 1e-15) coeffs.push_back({{"n1", n.first}, {"n2", n.second}, {"re", c.real()}, {"im", c.imag()}});
  out.results["omega"] = coeffs;
  Table t{{"iteration", "lambda1_bar", "area", "gradient_norm", "omega_variance", "step"}, {}};
  for (const auto& e : st.trace)
    t.rows.push_back({static_cast<double>(e.iteration), e.lambda1_bar, e.area, e.gradient_norm, e.variance, e.step});
  out.table = t;
  out.plot_title = "Conformal descent";
  out.plot_x = "iteration";
  out.plot_y = {"lambda1_bar"};
  out.tolerances = {{"gradient_norm", a.tol}};
  if (st.status == OptStatus::LineSearchStall) out.diagnostics["line_search"] = st.message;
  return out;
}

Outcome run_verify_bar(const BarArgs& a) {
  Outcome out;
  out.config = {{"command", "verify-bar"}, {"samples", a.samples}, {"band", a.band}, {"amplitude", a.amplitude},
                {"seed", a.seed}, {"jmax", a.jmax}, {"tol", a.tol}};
  if (a.band < 1 || a.amplitude < 0.0) throw Error(ErrorKind::InvalidInput, "band must be >= 1 and amplitude >= 0");
  const BarReport r = bar_sweep(a.samples, a.band, a.amplitude, a.seed, doubled_j(a.jmax), a.tol, true);
  const double zero_error = std::abs(r.samples.front().lambda1_bar - r.reference);
  out.results = {{"violations", r.violations}, {"min_lambda1_bar", r.min_value}, {"argmin", r.argmin},
                 {"bound", r.reference}, {"round_error", zero_error}};
  int equality = 0;
  for (const auto& s : r.samples) equality += s.equality_case ? 1 : 0;
  out.results["equality_cases"] = equality;
  const bool pass = r.violations == 0 && zero_error <= 1e-8;
  out.results["pass"] = pass;
  out.exit_code = pass ? kPass : kAssertion;
  out.tolerances = {{"bound", a.tol}, {"round", 1e-8}};
  Table t{{"sample", "lambda1_bar", "sup_omega", "variance", "violation"}, {}};
  for (std::size_t i = 0; i < r.samples.size(); ++i) {
    const auto& s = r.samples[i];
    t.rows.push_back({static_cast<double>(i), s.lambda1_bar, s.sup_omega, s.variance, s.violation ? 1.0 : 0.0});
  }
  out.table = t;
  out.plot_title = "Normalized first eigenvalue of random spheres";
  out.plot_x = "sample";
  out.plot_y = {"lambda1_bar"};
  return out;
}

Outcome run_verify_torus(const TorusVerifyArgs& a) {
  const TorusGeometry g = TorusGeometry::make(a.a, a.b, a.spin.at(0), a.spin.at(1));
  Outcome out;
  out.config = {{"command", "verify-torus"}, {"torus", geometry_json(g)}, {"perturbations", a.perturbations},
                {"seed", a.seed}, {"amplitude", a.amplitude}, {"cutoff", a.cutoff}, {"tol", a.tol}};
  const ModuliCheck mc = validate_moduli(g);
  if (!mc.ok) throw Error(ErrorKind::InvalidInput, mc.diagnostic);
  if (a.perturbations < 1) throw Error(ErrorKind::InvalidInput, "--perturbations must be positive");
  const double flat = flat_value(g);
  const bool assertion = g.lattice.b > b_threshold(g);
  OptOptions opt;
  opt.tol = a.tol;
  opt.cutoff = a.cutoff;
  Table t{{"run", "lambda1_bar", "error", "omega_variance", "min_lambda1_bar", "accepted_steps", "converged"}, {}};
  bool pass = true;
  double worst = 0.0, worst_var = 0.0, lowest = flat;
  for (int r = 0; r < a.perturbations; ++r) {
    const FourierField w0 = random_torus_factor(g, a.amplitude, 1, 2, a.seed, static_cast<std::uint64_t>(r));
    const OptState st = minimize(g, w0, opt);
    const double err = std::abs(st.lambda1_bar - flat);
    const bool ok = st.status == OptStatus::Converged && err <= 1e-4 && st.variance < 1e-5 &&
                    st.min_lambda1_bar >= flat - 1e-6;
    pass = pass && ok;
    worst = std::max(worst, err);
    worst_var = std::max(worst_var, st.variance);
    lowest = std::min(lowest, st.min_lambda1_bar);
    t.rows.push_back({static_cast<double>(r), st.lambda1_bar, err, st.variance, st.min_lambda1_bar,
                      static_cast<double>(st.accepted), st.status == OptStatus::Converged ? 1.0 : 0.0});
  }
  out.results = {{"flat_value", flat}, {"max_error", worst}, {"max_omega_variance", worst_var},
                 {"lowest_iterate", lowest}, {"assertion_mode", assertion}, {"b_threshold", b_threshold(g)}};
  if (assertion) {
    out.results["verdict"] = pass ? "PASS" : "FAIL";
    out.exit_code = pass ? kPass : kAssertion;
  } else {
    out.results["verdict"] = "EXPLORATORY";
  }
  out.tolerances = {{"value", 1e-4}, {"variance", 1e-5}, {"lower_bound", 1e-6}, {"gradient_norm", a.tol}};
  out.table = t;
  out.plot_title = "Converged normalized eigenvalue per perturbation";
  out.plot_x = "run";
  out.plot_y = {"lambda1_bar"};
  return out;
}

Outcome run_veronese(const VeroneseArgs& a) {
  Outcome out;
  out.config = {{"command", "veronese"}, {"max_m", a.max_m}, {"n_theta", a.n_theta}, {"n_phi", a.n_phi}};
  if (a.max_m < 1) throw Error(ErrorKind::InvalidInput, "--max-m must be positive");
  const Domain D = sphere_domain(a.n_theta, a.n_phi);
  out.tolerances = {{"harmonic", 1e-8}, {"alignment", 1e-9}, {"metric_ratio", 1e-8}, {"energy", 1e-6},
                    {"sum_of_squares", 1e-8}, {"global", 1e-6}, {"weak_conformality", 1e-8}};
  Table t{{"m", "harmonic_residual", "alignment", "ratio_error", "energy_error", "sum_of_squares", "global",
           "weak_conformality"},
          {}};
  json per = json::array();
  bool pass = true;
  // Where lambda = m sits in the round spectrum, under both enumerations.
  const SpectrumReport round = sphere_spectrum(a.max_m + 1);
  auto first_positive_index = [&](double lam) {
    int k = 1;
    for (const auto& e : round.positive()) {
      if (std::abs(e.value - lam) <= 1e-12 * lam) return k;
      k += e.quaternionic_mult;
    }
    return -1;
  };
  auto first_squared_index = [&](double lam) {
    for (int kb = 1; kb <= 2 * round.positive_count(); ++kb)
      if (std::abs(squared_index(round, kb) - lam) <= 1e-12 * lam) return kb;
    return -1;
  };
  for (int m = 1; m <= a.max_m; ++m) {
    const VeroneseData v = veronese(m);
    const double m2 = static_cast<double>(m * m);
    const double harm = harmonic_residual(v.psi, D);
    const auto q = quaternionic_check(v.psi, D);
    const auto im = induced_metric(v.psi, D);
    const double ratio = std::max(std::abs(im.max - m2), std::abs(im.min - m2));
    const auto e = energies(v.psi, D);
    const double energy = std::abs(e.E01 - m2 * 4.0 * kPi) / (m2 * 4.0 * kPi);
    const auto fields = spinors_from_map(v.psi, m);
    const double sos = sum_of_squares_variation(fields, D);
    const double glob = global_criticality_residual(fields, D);
    const double wc = weak_conformality(v.psi, D);
    const bool ok = harm <= 1e-8 && q.alignment <= 1e-9 && ratio <= 1e-8 && energy <= 1e-6 && sos <= 1e-8 &&
                    glob <= 1e-6 && wc <= 1e-8;
    pass = pass && ok;
    per.push_back({{"m", m}, {"harmonic_residual", harm}, {"alignment", q.alignment},
                   {"min_dbar_norm", q.min_dbar_norm}, {"metric_ratio_min", im.min}, {"metric_ratio_max", im.max},
                   {"E01", e.E01}, {"E10", e.E10}, {"degree", e.degree}, {"sum_of_squares_variation", sos},
                   {"global_criticality", glob}, {"weak_conformality", wc},
                   {"eigenvalue", m},
                   {"eigenvalue_index", {{"positive", first_positive_index(m)}, {"squared", first_squared_index(m)}}},
                   {"pass", ok}});
    t.rows.push_back({static_cast<double>(m), harm, q.alignment, ratio, energy, sos, glob, wc});
  }
  out.results = {{"maps", per}, {"pass", pass}};
  out.exit_code = pass ? kPass : kAssertion;
  out.table = t;
  out.plot_title = "Veronese residuals";
  out.plot_x = "m";
  out.plot_y = {"harmonic_residual", "weak_conformality"};
  return out;
}

Outcome run_energy(const EnergyArgs& a) {
  Outcome out;
  out.config = {{"command", "energy"}, {"poly", a.poly}, {"veronese", a.veronese}, {"frame", a.frame},
                {"torus_spinor", a.torus_spinor}, {"n_theta", a.n_theta}, {"n_phi", a.n_phi}, {"grid", a.grid}};
  const int sources = (a.poly.empty() ? 0 : 1) + (a.veronese > 0 ? 1 : 0) + (a.torus_spinor.empty() ? 0 : 1);
  if (sources != 1) throw Error(ErrorKind::InvalidInput, "give exactly one of --poly, --veronese, --torus-spinor");
  HomogeneousMap map;
  Domain D;
  if (!a.torus_spinor.empty()) {
    const TorusGeometry g = torus_from(a.torus_spinor, {0, 0});
    const auto omega = FourierField::zero(g);
    const TorusBasis basis = make_torus_basis(g, 2.0 * std::max(g.dual1.norm(), g.dual2.norm()) + 1.0);
    int best = 0;
    for (int k = 1; k < basis.size(); ++k)
      if (basis.points[k].xi.norm2() > 0.0 &&
          (basis.points[best].xi.norm2() == 0.0 || basis.points[k].xi.norm2() < basis.points[best].xi.norm2()))
        best = k;
    D = torus_domain(g, omega, a.grid, a.grid);
    map = from_eigenspinors({plane_wave_eigenspinor(basis, best, 1)}, basis, omega, D);
    out.results["great_circle_deviation"] = great_circle_deviation(map, D);
  } else {
    D = sphere_domain(a.n_theta, a.n_phi);
    if (a.veronese > 0) {
      const VeroneseData v = veronese(a.veronese);
      map = a.frame >= 0 ? frenet_frame(v.phi, a.frame) : v.psi;
    } else {
      PolyVector F;
      for (const auto& s : a.poly) F.push_back(parse_polynomial(s));
      map = polynomial_map(F);
    }
    out.diagnostics["chart_overlap_residual"] = chart_overlap_residual(map, D);
  }
  const EnergyReport e = energies(map, D);
  out.results["E10"] = e.E10;
  out.results["E01"] = e.E01;
  out.results["degree"] = e.degree;
  out.results["degree_residual"] = e.degree_residual;
  out.results["harmonic_residual"] = harmonic_residual(map, D);
  out.results["weak_conformality"] = weak_conformality(map, D);
  out.diagnostics["excluded_nodes"] = e.excluded_nodes;
  try {
    const auto im = induced_metric(map, D);
    out.results["induced_metric"] = {{"min", im.min}, {"max", im.max}, {"zeros", im.zeros}};
    if (D.kind == DomainKind::Sphere) {
      const auto ix = index_consistency(map, D);
      out.results["index"] = {{"predicted", ix.predicted_index}, {"near_zeros", ix.near_zeros}};
    }
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::HolomorphicMap) throw;
    out.diagnostics["holomorphic"] = true;
  }
  if ((map.n + 1) % 2 == 0) {
    const auto q = quaternionic_check(map, D);
    out.results["quaternionic"] = {{"alignment", q.alignment}, {"min_dbar_norm", q.min_dbar_norm},
                                   {"degenerate", q.degenerate}, {"near_zeros", q.near_zeros},
                                   {"even_orders", q.even_orders}};
  }
  out.results["target_dimension"] = map.n;
  return out;
}

}  // namespace spindirac::cli
