#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cqsl {

enum class Errc {
  NonHermitian,
  NoConvergence,
  InvalidP,
  NotPSD,
  DimMismatch,
  OutOfRange,
  IndexOutOfRange,
  InvalidState,
  OptimizerFailure,
  ValidationFailure,
  ConjugateMismatch,
  DegenerateDenominator,
  NotPure,
  NotStatic,
  ParseError,
  ConfigError,
};

std::string_view to_string(Errc code) noexcept;

/// Exception carrying a machine-readable error code. Every failure raised by
/// the library is an Error; the message adds human context.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cqsl
