#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "spindirac/polynomial.hpp"

namespace spindirac::cli {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

enum Exit { kPass = 0, kAssertion = 2, kInputError = 3, kSolverFailure = 4 };

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Outcome {
  json config = json::object();
  json results = json::object();
  json diagnostics = json::object();
  json tolerances = json::object();
  int exit_code = kPass;
  std::optional<Table> table;
  std::string plot_title;
  std::string plot_x;  // column plotted on the x axis
  std::vector<std::string> plot_y;
};

struct SpectrumArgs {
  std::vector<double> torus;  // a b
  std::vector<int> spin{0, 0};
  bool sphere = false;
  int count = 10;
};
Outcome run_spectrum(const SpectrumArgs& a);

struct DiscretizeArgs {
  std::vector<double> torus;
  std::vector<int> spin{0, 0};
  bool sphere = false;
  double cutoff = 3.0;
  double jmax = 7.5;
  std::vector<std::string> modes;  // torus "n1,n2,amplitude[,phase]"; sphere "l,m,coefficient"
  int count = 10;
};
Outcome run_discretize(const DiscretizeArgs& a);

struct OptimizeArgs {
  double a = 0.0, b = 7.0;
  std::vector<int> spin{0, 0};
  std::vector<std::string> modes;
  double random_amplitude = 0.0;  // random window perturbation when > 0
  unsigned long long seed = 1;
  int max_steps = 500;
  double tol = 1e-6;
  double cutoff = 2.0;
  double step = 0.1;
};
Outcome run_optimize(const OptimizeArgs& a);

struct BarArgs {
  int samples = 100;
  int band = 3;
  double amplitude = 0.3;
  unsigned long long seed = 7;
  double jmax = 7.5;
  double tol = 1e-6;
};
Outcome run_verify_bar(const BarArgs& a);

struct TorusVerifyArgs {
  double a = 0.0, b = 7.0;
  std::vector<int> spin{0, 0};
  int perturbations = 20;
  unsigned long long seed = 1;
  double amplitude = 0.1;
  double cutoff = 2.0;
  double tol = 1e-6;
};
Outcome run_verify_torus(const TorusVerifyArgs& a);

struct VeroneseArgs {
  int max_m = 3;
  int n_theta = 48;
  int n_phi = 96;
};
Outcome run_veronese(const VeroneseArgs& a);

struct EnergyArgs {
  std::vector<std::string> poly;  // components of a polynomial lift in z, zb
  int veronese = 0;               // Veronese m, with optional frame index
  int frame = -1;
  std::vector<double> torus_spinor;  // a b: lambda_1 plane-wave eigenspinor map, trivial character
  int n_theta = 64;
  int n_phi = 128;
  int grid = 48;
};
Outcome run_energy(const EnergyArgs& a);

// Sums of monomials such as "3*z^2*zb", "-2i*zb^3", "1.5", "z^3+2*z".
Polynomial parse_polynomial(const std::string& s);

}  // namespace spindirac::cli
