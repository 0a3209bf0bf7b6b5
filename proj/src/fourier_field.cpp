#include "spindirac/fourier_field.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "spindirac/errors.hpp"

namespace spindirac {

namespace {
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

void fft2(std::vector<cplx>& data, int n1, int n2, bool forward) {
  if (static_cast<std::size_t>(n1) * static_cast<std::size_t>(n2) != data.size())
    throw Error(ErrorKind::InvalidInput, "fft2 size mismatch");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    // FFTW's planner is not thread safe; execution is.
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(n1, n2, ptr, ptr, forward ? FFTW_FORWARD : FFTW_BACKWARD,
                            FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

FourierField FourierField::zero(const TorusGeometry& g, int N1, int N2) {
  FourierField f;
  f.geometry = g;
  f.N1 = N1;
  f.N2 = N2;
  return f;
}

FourierField FourierField::constant(const TorusGeometry& g, double c, int N1, int N2) {
  auto f = zero(g, N1, N2);
  f.add_constant(c);
  return f;
}

FourierField& FourierField::add_constant(double c) {
  coeffs[{0, 0}] += c;
  return *this;
}

FourierField& FourierField::add_cosine(int n1, int n2, double amplitude, double phase) {
  if (n1 == 0 && n2 == 0) return add_constant(amplitude * std::cos(phase));
  const cplx c = 0.5 * amplitude * std::polar(1.0, phase);
  coeffs[{n1, n2}] += c;
  coeffs[{-n1, -n2}] += std::conj(c);
  return *this;
}

FourierField& FourierField::add_coefficient(int n1, int n2, cplx c) {
  if (n1 == 0 && n2 == 0) return add_constant(c.real());
  coeffs[{n1, n2}] += c;
  coeffs[{-n1, -n2}] += std::conj(c);
  return *this;
}

double FourierField::value(double t1, double t2) const {
  double s = 0.0;
  for (const auto& [k, c] : coeffs) {
    const double ph = 2.0 * std::numbers::pi * (k.first * t1 + k.second * t2);
    s += c.real() * std::cos(ph) - c.imag() * std::sin(ph);
  }
  return s;
}

double FourierField::value_at(double x, double y) const {
  const auto [t1, t2] = geometry.lattice_coords(x, y);
  return value(t1, t2);
}

std::vector<double> FourierField::sample(int Q1, int Q2) const {
  // Separable evaluation: sum over modes of products of 1D phase tables.
  std::vector<cplx> grid(static_cast<std::size_t>(Q1) * Q2, 0.0);
  for (const auto& [k, c] : coeffs) {
    std::vector<cplx> e1(Q1), e2(Q2);
    for (int i = 0; i < Q1; ++i)
      e1[i] = std::polar(1.0, 2.0 * std::numbers::pi * k.first * static_cast<double>(i) / Q1);
    for (int j = 0; j < Q2; ++j)
      e2[j] = std::polar(1.0, 2.0 * std::numbers::pi * k.second * static_cast<double>(j) / Q2);
    for (int i = 0; i < Q1; ++i) {
      const cplx ci = c * e1[i];
      for (int j = 0; j < Q2; ++j) grid[static_cast<std::size_t>(i) * Q2 + j] += ci * e2[j];
    }
  }
  std::vector<double> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) out[i] = grid[i].real();
  return out;
}

double FourierField::mean() const {
  auto it = coeffs.find({0, 0});
  return it == coeffs.end() ? 0.0 : it->second.real();
}

int FourierField::max_index1() const {
  int m = 0;
  for (const auto& [k, c] : coeffs)
    if (c != cplx(0.0)) m = std::max(m, std::abs(k.first));
  return m;
}

int FourierField::max_index2() const {
  int m = 0;
  for (const auto& [k, c] : coeffs)
    if (c != cplx(0.0)) m = std::max(m, std::abs(k.second));
  return m;
}

bool FourierField::hermitian(double tol) const {
  for (const auto& [k, c] : coeffs) {
    auto it = coeffs.find({-k.first, -k.second});
    const cplx partner = it == coeffs.end() ? cplx(0.0) : it->second;
    if (std::abs(c - std::conj(partner)) > tol * (1.0 + std::abs(c))) return false;
  }
  return true;
}

double FourierField::variance(int Q1, int Q2) const {
  const auto s = sample(Q1, Q2);
  double m = 0.0;
  for (double v : s) m += v;
  m /= static_cast<double>(s.size());
  double var = 0.0;
  for (double v : s) var += (v - m) * (v - m);
  return var / static_cast<double>(s.size());
}

FourierField FourierField::operator+(const FourierField& o) const {
  FourierField r = *this;
  r.N1 = std::max(N1, o.N1);
  r.N2 = std::max(N2, o.N2);
  for (const auto& [k, c] : o.coeffs) r.coeffs[k] += c;
  return r;
}

FourierField FourierField::operator*(double s) const {
  FourierField r = *this;
  for (auto& [k, c] : r.coeffs) c *= s;
  return r;
}

void FourierField::prune(double tol) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (std::abs(it->second) <= tol)
      it = coeffs.erase(it);
    else
      ++it;
  }
}

double FourierField::inner(const FourierField& o) const {
  cplx s = 0.0;
  for (const auto& [k, c] : coeffs) {
    auto it = o.coeffs.find(k);
    if (it != o.coeffs.end()) s += std::conj(c) * it->second;
  }
  return geometry.area() * s.real();
}

FourierField FourierField::from_samples(const TorusGeometry& g, const std::vector<double>& samples,
                                        int Q1, int Q2, int K1, int K2) {
  if (2 * K1 >= Q1 || 2 * K2 >= Q2)
    throw Error(ErrorKind::InvalidInput, "projection window exceeds the sampling grid");
  std::vector<cplx> data(samples.begin(), samples.end());
  fft2(data, Q1, Q2, true);
  const double inv = 1.0 / (static_cast<double>(Q1) * Q2);
  FourierField f = zero(g, Q1, Q2);
  for (int n1 = -K1; n1 <= K1; ++n1) {
    for (int n2 = -K2; n2 <= K2; ++n2) {
      const int i = (n1 % Q1 + Q1) % Q1, j = (n2 % Q2 + Q2) % Q2;
      f.coeffs[{n1, n2}] = data[static_cast<std::size_t>(i) * Q2 + j] * inv;
    }
  }
  // Exact Hermitian symmetry for a real field.
  for (auto& [k, c] : f.coeffs) {
    if (k.first == 0 && k.second == 0) {
      c = c.real();
      continue;
    }
    if (std::make_pair(k.first, k.second) < std::make_pair(-k.first, -k.second)) {
      const cplx avg = 0.5 * (c + std::conj(f.coeffs[{-k.first, -k.second}]));
      c = avg;
      f.coeffs[{-k.first, -k.second}] = std::conj(avg);
    }
  }
  return f;
}

}  // namespace spindirac
