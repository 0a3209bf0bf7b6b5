#pragma once

#include <vector>

#include "spindirac/lattice_spin.hpp"

namespace spindirac {

struct SpectrumEntry {
  double value = 0.0;
  int complex_mult = 0;
  int quaternionic_mult = 0;
};

// Eigenvalues sorted ascending, grouped by coincidence, symmetric about zero.
struct SpectrumReport {
  std::vector<SpectrumEntry> entries;
  double area = 0.0;
  int kernel_quaternionic_dim = 0;

  // Distinct positive levels with their quaternionic multiplicity.
  std::vector<SpectrumEntry> positive() const;
  int positive_count() const;  // positive levels counted with quaternionic multiplicity
};

inline constexpr double kGroupingTolerance = 1e-9;

// Groups a flat list of eigenvalues (complex multiplicity one each) into a report.
// Values with |value| <= zero_tol count as kernel.
SpectrumReport group_spectrum(std::vector<double> eigenvalues, double area,
                              double rel_tol = kGroupingTolerance, double zero_tol = 1e-10);

SpectrumReport torus_spectrum(const TorusGeometry& geometry, int count);

int kernel_dimension(const TorusGeometry& geometry);

// lambda_k sqrt(area), positive enumeration with quaternionic multiplicity, kernel excluded.
double normalized(const SpectrumReport& report, int k);

// lambda_kbar for the enumeration of squares, kernel included as leading zeros.
double squared_index(const SpectrumReport& report, int k_bar);

SpectrumReport sphere_spectrum(int count);

}  // namespace spindirac
