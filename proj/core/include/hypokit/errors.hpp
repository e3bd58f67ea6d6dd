#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hypokit {

enum class ErrorCode {
  InvalidArgument,
  Dimension,
  Parse,
  Io,
  NotPSD,
  NotPD,
  Spectrum,
  NotSemiDissipative,
  ZeroEigenvalue,
  NotSemiContractive,
  UnitEigenvalue,
  PoleOnSpectrum,
  IndexMissing,
  IndexMismatch,
  DegenerateFit,
  NotStable,
  DefectiveNeedsEpsilon,
  EpsilonRequired,
  Conditioning,
  CriterionMismatch,
};

// Coarse grouping used by the CLI exit-code contract.
enum class ErrorCategory {
  Input,         // bad file, bad flag, malformed matrix: exit 1
  Precondition,  // the mathematics rejects the input: exit 2
  Consistency,   // two routes that must agree did not: exit 3
};

std::string_view to_string(ErrorCode code) noexcept;
ErrorCategory category_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, double value = std::nan(""))
      : std::runtime_error(message), code_(code), value_(value) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }
  /// Offending quantity (an eigenvalue, a norm, a distance), NaN when none applies.
  double value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  double value_;
};

}  // namespace hypokit
