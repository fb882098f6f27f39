#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sagnac {

enum class ErrorCode {
  NonPositiveDuration,
  NegativeSample,
  ZeroProfile,
  InvalidParameter,
  QuadratureNonConvergence,
  UnsupportedFamily,
  TimeOutOfRange,
  InsufficientResolution,
  DegeneratePath,
  TruncationInsufficient,
  StepCountInsufficient,
  KappaUndefined,
  InvalidIndex,
  NoZeroInBracket,
  QfiFormulaInvalid,
};

std::string_view to_string(ErrorCode code);

/// True for failures of a numerical procedure (as opposed to bad input).
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<double> value = std::nullopt);

  ErrorCode code() const noexcept { return code_; }

  /// Diagnostic value attached to the failure, e.g. the spectrum value that
  /// made a design index inadmissible.
  std::optional<double> value() const noexcept { return value_; }

 private:
  ErrorCode code_;
  std::optional<double> value_;
};

}  // namespace sagnac
