#pragma once

#include <stdexcept>
#include <string>

namespace spindirac {

enum class ErrorKind {
  InvalidInput,
  DegenerateLattice,
  RadiusTooLarge,
  IndexBeyondComputed,
  EmptyBasis,
  SolverFailure,
  NotNormalized,
  QuadratureInsufficient,
  ZeroEigenvalue,
  LineSearchStall,
  LiftVanishes,
  QuadratureUnresolved,
  EvenAmbientDimension,
  CommonZeroOnGrid,
  MixedEigenvalues,
  HolomorphicMap,
  NotLinearlyFull,
  NotAnEigenspinor,
};

const char* kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace spindirac
