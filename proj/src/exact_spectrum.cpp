#include "spindirac/exact_spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "spindirac/errors.hpp"

namespace spindirac {

namespace {

SpectrumEntry make_entry(double value, int complex_mult) {
  return {value, complex_mult, (complex_mult + 1) / 2};
}

}  // namespace

std::vector<SpectrumEntry> SpectrumReport::positive() const {
  std::vector<SpectrumEntry> out;
  for (const auto& e : entries)
    if (e.value > 0.0) out.push_back(e);
  return out;
}

int SpectrumReport::positive_count() const {
  int n = 0;
  for (const auto& e : entries)
    if (e.value > 0.0) n += e.quaternionic_mult;
  return n;
}

SpectrumReport group_spectrum(std::vector<double> values, double area, double rel_tol,
                              double zero_tol) {
  std::sort(values.begin(), values.end());
  SpectrumReport r;
  r.area = area;
  std::size_t i = 0;
  while (i < values.size()) {
    const double ref = values[i];
    std::size_t j = i + 1;
    if (std::abs(ref) <= zero_tol) {
      while (j < values.size() && std::abs(values[j]) <= zero_tol) ++j;
      const int n = static_cast<int>(j - i);
      r.entries.push_back(make_entry(0.0, n));
      r.kernel_quaternionic_dim = (n + 1) / 2;
    } else {
      while (j < values.size() && std::abs(values[j]) > zero_tol &&
             values[j] - ref <= rel_tol * std::abs(ref))
        ++j;
      double sum = 0.0;
      for (std::size_t k = i; k < j; ++k) sum += values[k];
      r.entries.push_back(make_entry(sum / static_cast<double>(j - i), static_cast<int>(j - i)));
    }
    i = j;
  }
  return r;
}

SpectrumReport torus_spectrum(const TorusGeometry& g, int count) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "count must be >= 1");
  // Start with a disc holding roughly 4*count lattice points, grow until complete.
  double radius = std::sqrt(4.0 * count / (std::numbers::pi * g.area())) + 1.0 / g.lattice.b + 1.0;
  std::vector<std::pair<double, int>> levels;  // (|xi|, count)
  bool kernel = false;
  for (;;) {
    const auto pts = enumerate_shifted_dual(g, radius);
    levels.clear();
    kernel = false;
    for (const auto& p : pts) {
      const double n = p.xi.norm();
      if (n == 0.0) {
        kernel = true;
        continue;
      }
      if (!levels.empty() && n - levels.back().first <= kGroupingTolerance * levels.back().first)
        ++levels.back().second;
      else
        levels.emplace_back(n, 1);
    }
    // The last level may be cut by the radius boundary only if its norm is near the radius.
    int complete = 0;
    for (const auto& lv : levels)
      if (lv.first < radius * (1.0 - 1e-9)) ++complete;
    if (complete >= count) break;
    radius *= 1.5;
  }
  levels.resize(static_cast<std::size_t>(count));

  SpectrumReport r;
  r.area = g.area();
  const double two_pi = 2.0 * std::numbers::pi;
  for (auto it = levels.rbegin(); it != levels.rend(); ++it)
    r.entries.push_back(make_entry(-two_pi * it->first, it->second));
  if (kernel) {
    r.entries.push_back(make_entry(0.0, 2));
    r.kernel_quaternionic_dim = 1;
  }
  for (const auto& lv : levels) r.entries.push_back(make_entry(two_pi * lv.first, lv.second));
  return r;
}

int kernel_dimension(const TorusGeometry& g) { return g.character.trivial() ? 1 : 0; }

double normalized(const SpectrumReport& report, int k) {
  if (k < 1) throw Error(ErrorKind::InvalidInput, "k must be >= 1");
  int seen = 0;
  for (const auto& e : report.entries) {
    if (e.value <= 0.0) continue;
    seen += e.quaternionic_mult;
    if (seen >= k) return e.value * std::sqrt(report.area);
  }
  std::ostringstream os;
  os << "requested k=" << k << " but only " << seen << " positive eigenvalues were computed";
  throw Error(ErrorKind::IndexBeyondComputed, os.str());
}

double squared_index(const SpectrumReport& report, int k_bar) {
  if (k_bar < 1) throw Error(ErrorKind::InvalidInput, "k_bar must be >= 1");
  int seen = report.kernel_quaternionic_dim;
  if (seen >= k_bar) return 0.0;
  // Each positive level appears together with its negative, doubling the multiplicity.
  for (const auto& e : report.entries) {
    if (e.value <= 0.0) continue;
    seen += 2 * e.quaternionic_mult;
    if (seen >= k_bar) return e.value;
  }
  std::ostringstream os;
  os << "requested k_bar=" << k_bar << " beyond the computed squared enumeration (" << seen << ")";
  throw Error(ErrorKind::IndexBeyondComputed, os.str());
}

SpectrumReport sphere_spectrum(int count) {
  if (count < 1) throw Error(ErrorKind::InvalidInput, "count must be >= 1");
  SpectrumReport r;
  r.area = 4.0 * std::numbers::pi;
  for (int k = count; k >= 1; --k) r.entries.push_back(make_entry(-k, 2 * k));
  for (int k = 1; k <= count; ++k) r.entries.push_back(make_entry(k, 2 * k));
  return r;
}

}  // namespace spindirac
