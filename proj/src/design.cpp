#include "sagnac/design.hpp"

#include <cmath>
#include <string>

#include "sagnac/error.hpp"
#include "sagnac/interferometer.hpp"
#include "sagnac/spectrum.hpp"

namespace sagnac {

using std::numbers::pi;

std::optional<int> whole_periods(const TrapConfig& config, double duration,
                                 double tolerance) {
  const double cycles = config.trap_frequency * duration / (2.0 * pi);
  const double k = std::round(cycles);
  if (k >= 1.0 && std::abs(cycles - k) <= tolerance * k) {
    return static_cast<int>(k);
  }
  return std::nullopt;
}

SchemeSpec verify_scheme(const TrapConfig& config, const SweepProfile& profile) {
  SchemeSpec s;
  s.family = profile.family();
  s.duration = profile.duration();
  s.config = config;
  s.spectrum_at_trap = spectrum_numeric(profile, config.trap_frequency).value;
  const double phi_i = interferometer_phase_closed(config, profile);
  const double phi_s = sagnac_phase(config);
  s.flags.spectrum_zero = std::abs(s.spectrum_at_trap) <= kDesignTolerance;
  s.flags.phase_equality =
      std::abs(phi_i - phi_s) <= kDesignTolerance * std::abs(phi_s);
  s.flags.qcrb_time = whole_periods(config, profile.duration()).has_value();
  s.decomposition = decompose(config, profile);
  return s;
}

SchemeSpec design_time(ProfileFamily family, const TrapConfig& config,
                       int index) {
  config.validate();
  const double period = config.period();
  double duration = 0.0;
  switch (family) {
    case ProfileFamily::Flat:
      if (index < 1) {
        throw Error(ErrorCode::InvalidIndex, "flat schemes need K >= 1", index);
      }
      duration = index * period;
      break;
    case ProfileFamily::Sinusoidal:
      if (index < 0) {
        throw Error(ErrorCode::InvalidIndex, "sinusoidal schemes need L >= 0",
                    index);
      }
      duration = (2 * index + 1) * period;
      break;
    case ProfileFamily::Cosinusoidal:
      if (index == 1) {
        // omega_0 T = 2 pi is a removable point of the spectrum where
        // W(omega_0) = -sqrt(pi/2) / 2, so the contrast is not maximal.
        const auto w = spectrum_numeric(SweepProfile::cosinusoidal(period),
                                        config.trap_frequency);
        throw Error(ErrorCode::InvalidIndex,
                    "cosinusoidal M = 1 leaves Re W(omega_0) = " +
                        std::to_string(w.value.real()) + " != 0",
                    w.value.real());
      }
      if (index < 2) {
        throw Error(ErrorCode::InvalidIndex, "cosinusoidal schemes need M >= 2",
                    index);
      }
      duration = index * period;
      break;
    case ProfileFamily::Tabulated:
      throw Error(ErrorCode::UnsupportedFamily,
                  "tabulated profiles have no design rule; use find_zero_time");
  }
  auto scheme = verify_scheme(config, make_profile(family, duration));
  scheme.index = index;
  return scheme;
}

double find_zero_time(const ProfileShape& shape, const TrapConfig& config,
                      double lo, double hi) {
  config.validate();
  if (!(lo > 0.0 && hi > lo)) {
    throw Error(ErrorCode::InvalidParameter,
                "bracket must satisfy 0 < lo < hi", lo);
  }
  const double w0 = config.trap_frequency;
  auto objective = [&](double T) {
    return std::norm(spectrum_numeric(shape.at(T), w0).value);
  };

  const double tolerance = 1e-10 * config.period();
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  while (b - a > tolerance) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = objective(d);
    }
  }

  double best = fc < fd ? c : d;
  double f_best = std::min(fc, fd);
  // Parabola through the two interior points and their midpoint.
  {
    const double m = 0.5 * (c + d);
    const double fm = objective(m);
    const double x0 = c, x1 = m, x2 = d;
    const double f0 = fc, f1 = fm, f2 = fd;
    const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
    if (denom != 0.0) {
      const double A = (x2 * (f1 - f0) + x1 * (f0 - f2) + x0 * (f2 - f1)) / denom;
      const double B = (x2 * x2 * (f0 - f1) + x1 * x1 * (f2 - f0) +
                        x0 * x0 * (f1 - f2)) / denom;
      if (A > 0.0) {
        const double vertex = -B / (2.0 * A);
        if (vertex > a && vertex < b) {
          const double fv = objective(vertex);
          if (fv < f_best) {
            best = vertex;
            f_best = fv;
          }
        }
      }
      if (fm < f_best) {
        best = m;
        f_best = fm;
      }
    }
  }

  if (!(f_best <= 1e-16)) {
    throw Error(ErrorCode::NoZeroInBracket,
                "minimum of |W(omega_0)|^2 in bracket is " +
                    std::to_string(f_best),
                f_best);
  }
  return best;
}

}  // namespace sagnac
