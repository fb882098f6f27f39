#pragma once

#include <numbers>
#include <span>
#include <string_view>
#include <vector>

namespace sagnac {

/// Physical parameters of the ring trap. Units are whatever the caller picks;
/// every formula in the library is dimensionally consistent in them.
struct TrapConfig {
  double mass = 1.0;
  double hbar = 1.0;
  double trap_frequency = 1.0;  // omega_0
  double radius = 1.0;
  double rotation = 0.0;  // Omega, any sign

  /// m = hbar = omega_0 = r = 1 with the given rotation frequency.
  static TrapConfig natural(double rotation = 0.1);

  /// Throws InvalidParameter unless m, hbar, omega_0 and r are positive and
  /// every field is finite.
  void validate() const;

  /// sqrt(m hbar omega_0 / 2) * r, the scale of the drive amplitude.
  double drive_scale() const;

  /// Trap period 2 pi / omega_0.
  double period() const { return 2.0 * std::numbers::pi / trap_frequency; }
};

enum class ProfileFamily { Flat, Sinusoidal, Cosinusoidal, Tabulated };

std::string_view to_string(ProfileFamily family);
/// Parses "flat", "sinusoidal", "cosinusoidal" or "tabulated".
ProfileFamily parse_family(std::string_view name);

/// Spin branch: Up (eta = 0) co-sweeps with +omega_P, Down (eta = 1)
/// counter-sweeps with -omega_P.
enum class Branch { Up = 0, Down = 1 };

inline constexpr int index(Branch b) { return static_cast<int>(b); }
inline constexpr double sweep_sign(Branch b) {
  return b == Branch::Up ? 1.0 : -1.0;
}
inline constexpr Branch other(Branch b) {
  return b == Branch::Up ? Branch::Down : Branch::Up;
}

/// Sweep angular velocity omega_P(t) on [0, T], normalized to
/// integral omega_P dt = pi, and extended by zero outside the window.
class SweepProfile {
 public:
  ProfileFamily family() const { return family_; }
  double duration() const { return duration_; }

  /// Normalized samples on the uniform grid over [0, T] (Tabulated only).
  std::span<const double> samples() const { return samples_; }

  /// Factor applied to the raw samples to reach integral pi; 1 for the
  /// analytic families.
  double rescale_factor() const { return rescale_; }

  /// omega_P(t); zero outside [0, T].
  double operator()(double t) const;

  /// Interior points of [0, T] where omega_P has a kink. Quadrature over the
  /// window should split there.
  std::span<const double> breakpoints() const { return breakpoints_; }

  static SweepProfile flat(double duration);
  static SweepProfile sinusoidal(double duration);
  static SweepProfile cosinusoidal(double duration);
  /// Linear interpolation of `samples` on a uniform grid spanning [0, T]
  /// (first sample at 0, last at T), rescaled so the integral is pi.
  static SweepProfile tabulated(double duration, std::span<const double> samples);

 private:
  SweepProfile(ProfileFamily family, double duration);

  ProfileFamily family_;
  double duration_;
  double rescale_ = 1.0;
  std::vector<double> samples_;
  std::vector<double> breakpoints_;
};

/// Builds a profile of the given family. `samples` is only read for
/// Tabulated.
SweepProfile make_profile(ProfileFamily family, double duration,
                          std::span<const double> samples = {});

inline double eval_profile(const SweepProfile& profile, double t) {
  return profile(t);
}

/// lambda_eta(t) = sqrt(m hbar omega_0 / 2) r [Omega + (1 - 2 eta) omega_P(t)].
double lambda_drive(const TrapConfig& config, const SweepProfile& profile,
                    Branch branch, double t);

}  // namespace sagnac
