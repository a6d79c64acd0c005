#include "cqsl/error.hpp"

namespace cqsl {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::NonHermitian: return "NonHermitian";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::InvalidP: return "InvalidP";
    case Errc::NotPSD: return "NotPSD";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidState: return "InvalidState";
    case Errc::OptimizerFailure: return "OptimizerFailure";
    case Errc::ValidationFailure: return "ValidationFailure";
    case Errc::ConjugateMismatch: return "ConjugateMismatch";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::NotPure: return "NotPure";
    case Errc::NotStatic: return "NotStatic";
    case Errc::ParseError: return "ParseError";
    case Errc::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace cqsl
