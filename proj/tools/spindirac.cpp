#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <unistd.h>

#include "commands.hpp"
#include "spindirac/errors.hpp"

namespace cli = spindirac::cli;
using cli::json;

namespace {

struct OutputArgs {
  std::string json_path;
  std::string csv_path;
  std::string plot_path;
};

void add_output_options(CLI::App* sub, OutputArgs& o) {
  sub->add_option("--output", o.json_path, "JSON report path (stdout when omitted)");
  sub->add_option("--csv", o.csv_path, "CSV table path");
  sub->add_option("--plot", o.plot_path, "gnuplot script path (needs --csv)");
}

// Write to a temporary sibling and rename, so readers never see partial files.
void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f) throw spindirac::Error(spindirac::ErrorKind::InvalidInput, "cannot write " + tmp.string());
    f << content;
    if (!f) throw spindirac::Error(spindirac::ErrorKind::InvalidInput, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

std::string csv_text(const cli::Table& t) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << '\n';
  }
  return os.str();
}

std::string plot_text(const cli::Outcome& o, const std::string& csv_path) {
  std::ostringstream os;
  os << "# gnuplot script; run: gnuplot -p " << "<this file>\n";
  os << "set datafile separator ','\n";
  os << "set key autotitle columnhead\n";
  os << "set title \"" << o.plot_title << "\"\n";
  os << "set xlabel \"" << o.plot_x << "\"\n";
  os << "plot ";
  for (std::size_t i = 0; i < o.plot_y.size(); ++i)
    os << (i ? ", " : "") << "'" << std::filesystem::path(csv_path).filename().string() << "' using \""
       << o.plot_x << "\":\"" << o.plot_y[i] << "\" with linespoints";
  os << '\n';
  return os.str();
}

json provenance(const json& tolerances) {
  return {{"toolkit", "spindirac"}, {"version", cli::kVersion}, {"tolerances", tolerances}};
}

int emit_error(const OutputArgs& o, const json& config, const std::string& kind, const std::string& message,
               int code) {
  json rec = {{"schema_version", cli::kSchemaVersion},
              {"config", config},
              {"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}},
              {"provenance", provenance(json::object())}};
  const std::string text = rec.dump(2) + "\n";
  std::cerr << "error (" << kind << "): " << message << '\n';
  try {
    if (o.json_path.empty())
      std::cout << text;
    else
      write_atomic(o.json_path, text);
  } catch (const std::exception&) {
    std::cout << text;
  }
  return code;
}

int exit_for(spindirac::ErrorKind k) {
  using spindirac::ErrorKind;
  switch (k) {
    case ErrorKind::InvalidInput:
    case ErrorKind::DegenerateLattice:
    case ErrorKind::RadiusTooLarge:
    case ErrorKind::IndexBeyondComputed:
    case ErrorKind::EmptyBasis:
    case ErrorKind::EvenAmbientDimension:
    case ErrorKind::NotLinearlyFull:
      return cli::kInputError;
    default:
      return cli::kSolverFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirac spectra on tori and spheres, conformal optimization and harmonic-map checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cli::kVersion);
  OutputArgs out;

  cli::SpectrumArgs sp;
  auto* s_spec = app.add_subcommand("spectrum", "exact flat-torus or round-sphere spectrum");
  s_spec->add_option("--torus", sp.torus, "lattice parameters a b")->expected(2);
  s_spec->add_option("--spin", sp.spin, "spin character bits")->expected(2);
  s_spec->add_flag("--sphere", sp.sphere, "round sphere instead of a torus");
  s_spec->add_option("--count", sp.count, "number of positive levels");
  add_output_options(s_spec, out);

  cli::DiscretizeArgs di;
  auto* s_disc = app.add_subcommand("discretize", "conformally perturbed torus or sphere eigenproblem");
  s_disc->add_option("--torus", di.torus, "lattice parameters a b")->expected(2);
  s_disc->add_option("--spin", di.spin, "spin character bits")->expected(2);
  s_disc->add_flag("--sphere", di.sphere, "sphere instead of a torus");
  s_disc->add_option("--cutoff", di.cutoff, "plane-wave radius |xi| <= cutoff");
  s_disc->add_option("--jmax", di.jmax, "largest spin-weighted harmonic degree (half-integer)");
  s_disc->add_option("--mode", di.modes, "torus n1,n2,amplitude[,phase] or sphere l,m,coefficient (repeatable)");
  s_disc->add_option("--count", di.count, "number of positive levels reported");
  add_output_options(s_disc, out);

  cli::OptimizeArgs op;
  auto* s_opt = app.add_subcommand("optimize", "descent of the normalized first eigenvalue on a torus");
  s_opt->add_option("--a", op.a, "lattice parameter a");
  s_opt->add_option("--b", op.b, "lattice parameter b");
  s_opt->add_option("--spin", op.spin, "spin character bits")->expected(2);
  s_opt->add_option("--mode", op.modes, "initial factor n1,n2,amplitude[,phase] (repeatable)");
  s_opt->add_option("--random-amplitude", op.random_amplitude, "add a random perturbation of this sup norm");
  s_opt->add_option("--seed", op.seed, "seed for the random perturbation");
  s_opt->add_option("--max-steps", op.max_steps, "step limit");
  s_opt->add_option("--tol", op.tol, "gradient-norm tolerance");
  s_opt->add_option("--cutoff", op.cutoff, "plane-wave radius");
  s_opt->add_option("--step", op.step, "initial step");
  add_output_options(s_opt, out);

  cli::BarArgs ba;
  auto* s_bar = app.add_subcommand("verify-bar", "random conformal spheres against the lower bound 2 sqrt(pi)");
  s_bar->add_option("--samples", ba.samples, "number of factors (the first is the round metric)");
  s_bar->add_option("--band", ba.band, "spherical-harmonic band of the factors");
  s_bar->add_option("--amplitude", ba.amplitude, "largest sup norm of a factor");
  s_bar->add_option("--seed", ba.seed, "seed");
  s_bar->add_option("--jmax", ba.jmax, "discretization degree (half-integer)");
  s_bar->add_option("--tol", ba.tol, "allowed undershoot");
  add_output_options(s_bar, out);

  cli::TorusVerifyArgs tv;
  auto* s_tor = app.add_subcommand("verify-torus", "flat-metric minimality under random perturbations");
  s_tor->add_option("--a", tv.a, "lattice parameter a");
  s_tor->add_option("--b", tv.b, "lattice parameter b");
  s_tor->add_option("--spin", tv.spin, "spin character bits")->expected(2);
  s_tor->add_option("--perturbations", tv.perturbations, "number of descent runs");
  s_tor->add_option("--seed", tv.seed, "seed");
  s_tor->add_option("--amplitude", tv.amplitude, "largest sup norm of the initial perturbation");
  s_tor->add_option("--cutoff", tv.cutoff, "plane-wave radius");
  s_tor->add_option("--tol", tv.tol, "gradient-norm tolerance");
  add_output_options(s_tor, out);

  cli::VeroneseArgs ve;
  auto* s_ver = app.add_subcommand("veronese", "Veronese and Frenet-frame battery");
  s_ver->add_option("--max-m", ve.max_m, "largest m");
  s_ver->add_option("--n-theta", ve.n_theta, "Gauss-Legendre nodes in cos(theta)");
  s_ver->add_option("--n-phi", ve.n_phi, "azimuthal nodes");
  add_output_options(s_ver, out);

  cli::EnergyArgs en;
  auto* s_en = app.add_subcommand("energy", "energies, degree and residuals of a map into CP^n");
  s_en->add_option("--poly", en.poly, "lift component polynomial in z, zb (repeat per component)");
  s_en->add_option("--veronese", en.veronese, "Veronese m (the quaternionic map unless --frame is set)");
  s_en->add_option("--frame", en.frame, "Frenet frame index of the Veronese curve");
  s_en->add_option("--torus-spinor", en.torus_spinor, "a b: first plane-wave eigenspinor map")->expected(2);
  s_en->add_option("--n-theta", en.n_theta, "sphere nodes in cos(theta)");
  s_en->add_option("--n-phi", en.n_phi, "sphere azimuthal nodes");
  s_en->add_option("--grid", en.grid, "torus grid size per direction");
  add_output_options(s_en, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error(out, json{{"argv", std::vector<std::string>(argv + 1, argv + argc)}}, "InvalidArguments",
                      e.what(), cli::kInputError);
  }

  cli::Outcome res;
  try {
    if (*s_spec)
      res = cli::run_spectrum(sp);
    else if (*s_disc)
      res = cli::run_discretize(di);
    else if (*s_opt)
      res = cli::run_optimize(op);
    else if (*s_bar)
      res = cli::run_verify_bar(ba);
    else if (*s_tor)
      res = cli::run_verify_torus(tv);
    else if (*s_ver)
      res = cli::run_veronese(ve);
    else
      res = cli::run_energy(en);
  } catch (const spindirac::Error& e) {
    return emit_error(out, json{{"command", app.get_subcommands().front()->get_name()}}, spindirac::kind_name(e.kind()),
                      e.what(), exit_for(e.kind()));
  } catch (const std::exception& e) {
    return emit_error(out, json{{"command", app.get_subcommands().front()->get_name()}}, "InternalError", e.what(),
                      cli::kSolverFailure);
  }

  try {
    if (!out.plot_path.empty() && out.csv_path.empty())
      throw spindirac::Error(spindirac::ErrorKind::InvalidInput, "--plot needs --csv");
    if (!out.csv_path.empty() && res.table) write_atomic(out.csv_path, csv_text(*res.table));
    if (!out.plot_path.empty() && res.table) write_atomic(out.plot_path, plot_text(res, out.csv_path));
    json report = {{"schema_version", cli::kSchemaVersion},
                   {"config", res.config},
                   {"results", res.results},
                   {"diagnostics", res.diagnostics},
                   {"provenance", provenance(res.tolerances)}};
    if (res.table) report["csv_columns"] = res.table->columns;
    const std::string text = report.dump(2) + "\n";
    if (out.json_path.empty())
      std::cout << text;
    else
      write_atomic(out.json_path, text);
  } catch (const std::exception& e) {
    return emit_error(out, res.config, "OutputError", e.what(), cli::kInputError);
  }
  return res.exit_code;
}
