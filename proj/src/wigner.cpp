#include "spindirac/wigner.hpp"

#include <gsl/gsl_integration.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "spindirac/errors.hpp"

namespace spindirac {

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// Closed form at j = max(|m'|, |m|): the sum over k collapses to one term.
double wigner_d_edge(int tj, int tmp, int tm, double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  // integer offsets: a1 = j+m-k, a2 = j-k-m', a3 = k-m+m'
  const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2, jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
  const int kmin = std::max(0, (tm - tmp) / 2);  // a3 >= 0
  const int kmax = std::min(jpm, jmmp);
  double sum = 0.0;
  for (int k = kmin; k <= kmax; ++k) {
    const int a1 = jpm - k, a2 = jmmp - k, a3 = k - (tm - tmp) / 2;
    const double logmag = 0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) +
                                 log_factorial(jmm)) -
                          log_factorial(a1) - log_factorial(k) - log_factorial(a2) - log_factorial(a3);
    const int pcos = tj - 2 * k + (tm - tmp) / 2;
    const int psin = 2 * k - (tm - tmp) / 2;
    const double term = std::exp(logmag) * std::pow(c, pcos) * std::pow(s, psin);
    sum += (a3 % 2 ? -term : term);
  }
  return sum;
}

}  // namespace

std::vector<double> wigner_d_column(int tm, int ts, int tjmax, double theta) {
  const int tj0 = std::max(std::abs(tm), std::abs(ts));
  if ((tj0 - tjmax) % 2 != 0 || (tm - ts) % 2 != 0)
    throw Error(ErrorKind::InvalidInput, "inconsistent half-integer parity in Wigner d");
  if (tjmax < tj0) return {};
  const int count = (tjmax - tj0) / 2 + 1;
  std::vector<double> d(static_cast<std::size_t>(count));
  const double x = std::cos(theta);
  const double m = 0.5 * tm, s = 0.5 * ts;
  d[0] = wigner_d_edge(tj0, tm, ts, theta);
  if (count == 1) return d;
  if (tj0 == 0) {
    d[1] = x;  // d^1_{00}
  }
  for (int i = (tj0 == 0 ? 1 : 0); i + 1 < count; ++i) {
    const double j = 0.5 * tj0 + i;
    const double jp = j + 1.0;
    const double lead = j * std::sqrt((jp * jp - m * m) * (jp * jp - s * s));
    const double mid = (2.0 * j + 1.0) * (j * jp * x - m * s);
    const double back = i > 0 ? jp * std::sqrt((j * j - m * m) * (j * j - s * s)) * d[i - 1] : 0.0;
    d[i + 1] = (mid * d[i] - back) / lead;
  }
  return d;
}

double wigner_d(int tj, int tm, int ts, double theta) {
  const int tj0 = std::max(std::abs(tm), std::abs(ts));
  if (tj < tj0) return 0.0;
  return wigner_d_column(tm, ts, tj, theta).back();
}

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "Gauss-Legendre order must be positive");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<size_t>(n));
  GaussLegendre g;
  g.nodes.resize(static_cast<std::size_t>(n));
  g.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    gsl_integration_glfixed_point(-1.0, 1.0, static_cast<size_t>(i), &g.nodes[i], &g.weights[i], table);
  gsl_integration_glfixed_table_free(table);
  return g;
}

double real_spherical_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || std::abs(m) > l) throw Error(ErrorKind::InvalidInput, "invalid spherical harmonic index");
  const double N = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi));
  const int am = std::abs(m);
  const double d = wigner_d(2 * l, 2 * am, 0, theta);
  if (m == 0) return N * d;
  const double r = std::sqrt(2.0) * N * d;
  return m > 0 ? r * std::cos(am * phi) : r * std::sin(am * phi);
}

}  // namespace spindirac
