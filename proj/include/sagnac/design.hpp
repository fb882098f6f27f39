#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "sagnac/geometry.hpp"
#include "sagnac/model.hpp"

namespace sagnac {

/// Conditions a scheme is checked against, each verified numerically.
struct SchemeFlags {
  bool spectrum_zero = false;   // |W(omega_0)| <= 1e-8: unit contrast
  bool phase_equality = false;  // |phi_I - phi_S| <= 1e-8 |phi_S|
  bool qcrb_time = false;       // omega_0 T = 2 K pi within 1e-8
  bool all() const { return spectrum_zero && phase_equality && qcrb_time; }
};

struct SchemeSpec {
  ProfileFamily family = ProfileFamily::Flat;
  std::optional<int> index;  // K, L or M for the analytic families
  double duration = 0.0;
  TrapConfig config;
  std::complex<double> spectrum_at_trap;
  SchemeFlags flags;
  PhaseDecomposition decomposition;
};

/// Profile shape without a time scale: an analytic family, or tabulated
/// samples stretched over whatever T is being tried.
struct ProfileShape {
  ProfileFamily family = ProfileFamily::Flat;
  std::vector<double> samples;

  SweepProfile at(double duration) const {
    return make_profile(family, duration, samples);
  }
};

inline constexpr double kDesignTolerance = 1e-8;

/// Number of whole trap periods in T when omega_0 T = 2 K pi within
/// `tolerance`, K >= 1.
std::optional<int> whole_periods(const TrapConfig& config, double duration,
                                 double tolerance = kDesignTolerance);

/// Evaluates every scheme condition for a concrete profile.
SchemeSpec verify_scheme(const TrapConfig& config, const SweepProfile& profile);

/// Interrogation time of a design point:
///   Flat         omega_0 T = 2 K pi,        K >= 1
///   Sinusoidal   omega_0 T = 2 (2 L + 1) pi, L >= 0
///   Cosinusoidal omega_0 T = 2 M pi,        M >= 2
/// Throws InvalidIndex outside those ranges; for cosinusoidal M = 1 the
/// error carries Re W(omega_0), which does not vanish there.
SchemeSpec design_time(ProfileFamily family, const TrapConfig& config, int index);

/// T in [lo, hi] minimizing |W(omega_0)|^2 for the shape stretched over T,
/// by golden-section search with a closing parabolic step. Throws
/// NoZeroInBracket unless the minimum reaches 1e-16.
double find_zero_time(const ProfileShape& shape, const TrapConfig& config,
                      double lo, double hi);

}  // namespace sagnac
