#include "spindirac/errors.hpp"

namespace spindirac {

const char* kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DegenerateLattice: return "DegenerateLattice";
    case ErrorKind::RadiusTooLarge: return "RadiusTooLarge";
    case ErrorKind::IndexBeyondComputed: return "IndexBeyondComputed";
    case ErrorKind::EmptyBasis: return "EmptyBasis";
    case ErrorKind::SolverFailure: return "SolverFailure";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::QuadratureInsufficient: return "QuadratureInsufficient";
    case ErrorKind::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorKind::LineSearchStall: return "LineSearchStall";
    case ErrorKind::LiftVanishes: return "LiftVanishes";
    case ErrorKind::QuadratureUnresolved: return "QuadratureUnresolved";
    case ErrorKind::EvenAmbientDimension: return "EvenAmbientDimension";
    case ErrorKind::CommonZeroOnGrid: return "CommonZeroOnGrid";
    case ErrorKind::MixedEigenvalues: return "MixedEigenvalues";
    case ErrorKind::HolomorphicMap: return "HolomorphicMap";
    case ErrorKind::NotLinearlyFull: return "NotLinearlyFull";
    case ErrorKind::NotAnEigenspinor: return "NotAnEigenspinor";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(kind_name(kind)) + ": " + message), kind_(kind) {}

}  // namespace spindirac
