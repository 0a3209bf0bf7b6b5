#pragma once

#include <cstdint>
#include <random>

namespace spindirac {

// Portable seeded generator: the std distributions are implementation defined,
// so variates are derived from the raw 64-bit stream directly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform();                      // [0, 1)
  double uniform(double lo, double hi);  // [lo, hi)
  double normal();
  int integer(int lo, int hi);  // inclusive range
  Rng split(std::uint64_t stream);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spindirac
