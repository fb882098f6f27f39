#pragma once

#include <optional>

#include "sagnac/model.hpp"

namespace sagnac {

struct SensitivityReport {
  double delta_omega = 0.0;     // may be +inf
  double signal_fisher = 0.0;   // 1 / delta_omega^2
  double phase_slope = 0.0;     // d phi_I / d Omega
  double contrast = 1.0;
  double phase = 0.0;           // phi_I
  std::optional<double> qfi;    // present only when qfi_valid
  bool qfi_valid = false;       // omega_0 T = 2 K pi
  bool saturated = false;       // unit contrast at a whole number of periods
  bool limit_evaluated = false; // 0/0 at |C| = 1, sin(phi_I) = 0
};

/// Quantum Fisher information (d phi_I / d Omega)^2, established only for
/// omega_0 T = 2 K pi; throws QfiFormulaInvalid elsewhere.
double qfi(const TrapConfig& config, const SweepProfile& profile);

struct Uncertainty {
  double delta_omega = 0.0;
  bool limit_evaluated = false;
};

/// Estimator uncertainty from the population signal,
///   1/dOmega^2 = slope^2 sin^2(phi) / (|C|^-2 - 1 + sin^2(phi)),
/// with `contrast_excess` = |C|^-2 - 1 >= 0. At contrast_excess = 0 and
/// sin(phi) = 0 the removable limit 1/|slope| is returned.
Uncertainty uncertainty(double contrast_excess, double phase, double slope);

/// Same, from the contrast itself.
double delta_omega_from_contrast(double contrast, double phase, double slope);

double delta_omega(const TrapConfig& config, const SweepProfile& profile);

SensitivityReport sensitivity(const TrapConfig& config,
                              const SweepProfile& profile);

}  // namespace sagnac
