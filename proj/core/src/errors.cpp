#include "hypokit/errors.hpp"

namespace hypokit {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Dimension: return "DimensionError";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Io: return "IoError";
    case ErrorCode::NotPSD: return "NotPSDError";
    case ErrorCode::NotPD: return "NotPDError";
    case ErrorCode::Spectrum: return "SpectrumError";
    case ErrorCode::NotSemiDissipative: return "NotSemiDissipative";
    case ErrorCode::ZeroEigenvalue: return "ZeroEigenvalue";
    case ErrorCode::NotSemiContractive: return "NotSemiContractive";
    case ErrorCode::UnitEigenvalue: return "UnitEigenvalue";
    case ErrorCode::PoleOnSpectrum: return "PoleOnSpectrum";
    case ErrorCode::IndexMissing: return "IndexMissing";
    case ErrorCode::IndexMismatch: return "IndexMismatch";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::DefectiveNeedsEpsilon: return "DefectiveNeedsEpsilon";
    case ErrorCode::EpsilonRequired: return "EpsilonRequired";
    case ErrorCode::Conditioning: return "ConditioningError";
    case ErrorCode::CriterionMismatch: return "CriterionMismatch";
  }
  return "UnknownError";
}

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Dimension:
    case ErrorCode::Parse:
    case ErrorCode::Io:
      return ErrorCategory::Input;
    case ErrorCode::CriterionMismatch:
      return ErrorCategory::Consistency;
    default:
      return ErrorCategory::Precondition;
  }
}

}  // namespace hypokit
