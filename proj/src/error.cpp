#include "sagnac/error.hpp"

namespace sagnac {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveDuration: return "NonPositiveDuration";
    case ErrorCode::NegativeSample: return "NegativeSample";
    case ErrorCode::ZeroProfile: return "ZeroProfile";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::QuadratureNonConvergence: return "QuadratureNonConvergence";
    case ErrorCode::UnsupportedFamily: return "UnsupportedFamily";
    case ErrorCode::TimeOutOfRange: return "TimeOutOfRange";
    case ErrorCode::InsufficientResolution: return "InsufficientResolution";
    case ErrorCode::DegeneratePath: return "DegeneratePath";
    case ErrorCode::TruncationInsufficient: return "TruncationInsufficient";
    case ErrorCode::StepCountInsufficient: return "StepCountInsufficient";
    case ErrorCode::KappaUndefined: return "KappaUndefined";
    case ErrorCode::InvalidIndex: return "InvalidIndex";
    case ErrorCode::NoZeroInBracket: return "NoZeroInBracket";
    case ErrorCode::QfiFormulaInvalid: return "QfiFormulaInvalid";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::QuadratureNonConvergence:
    case ErrorCode::InsufficientResolution:
    case ErrorCode::TruncationInsufficient:
    case ErrorCode::StepCountInsufficient:
    case ErrorCode::NoZeroInBracket:
    case ErrorCode::KappaUndefined:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<double> value)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      value_(value) {}

}  // namespace sagnac
