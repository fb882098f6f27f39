#include "sagnac/sensitivity.hpp"

#include <cmath>
#include <limits>

#include "sagnac/design.hpp"
#include "sagnac/error.hpp"
#include "sagnac/interferometer.hpp"

namespace sagnac {

double qfi(const TrapConfig& config, const SweepProfile& profile) {
  if (!whole_periods(config, profile.duration())) {
    throw Error(ErrorCode::QfiFormulaInvalid,
                "QFI is only available for omega_0 T = 2 K pi",
                config.trap_frequency * profile.duration());
  }
  const double slope = phase_slope(config, profile);
  return slope * slope;
}

Uncertainty uncertainty(double contrast_excess, double phase, double slope) {
  const double inf = std::numeric_limits<double>::infinity();
  const double s = std::sin(phase);
  const double denom = contrast_excess + s * s;
  if (slope == 0.0) return {inf, false};
  if (denom == 0.0) return {1.0 / std::abs(slope), true};
  if (s == 0.0) return {inf, false};
  return {std::sqrt(denom) / (std::abs(slope) * std::abs(s)), false};
}

double delta_omega_from_contrast(double contrast, double phase, double slope) {
  return uncertainty(1.0 / (contrast * contrast) - 1.0, phase, slope)
      .delta_omega;
}

double delta_omega(const TrapConfig& config, const SweepProfile& profile) {
  return sensitivity(config, profile).delta_omega;
}

SensitivityReport sensitivity(const TrapConfig& config,
                              const SweepProfile& profile) {
  SensitivityReport r;
  const auto result = readout(config, profile);
  r.contrast = result.contrast;
  r.phase = result.phase;
  r.phase_slope = phase_slope(config, profile);
  // |C|^-2 - 1 = exp(|delta_alpha|^2) - 1, kept exact near unit contrast. A
  // contrast that rounds to 1 counts as unit contrast, so the removable limit
  // applies at sin(phi_I) = 0.
  const double excess =
      r.contrast == 1.0 ? 0.0 : std::expm1(std::norm(result.delta_alpha));
  const auto u = uncertainty(excess, r.phase, r.phase_slope);
  r.delta_omega = u.delta_omega;
  r.limit_evaluated = u.limit_evaluated;
  r.signal_fisher = 1.0 / (r.delta_omega * r.delta_omega);

  const auto periods = whole_periods(config, profile.duration());
  r.qfi_valid = periods.has_value();
  if (r.qfi_valid) r.qfi = r.phase_slope * r.phase_slope;
  r.saturated = r.qfi_valid && std::abs(1.0 - r.contrast) <= kDesignTolerance;
  return r;
}

}  // namespace sagnac
