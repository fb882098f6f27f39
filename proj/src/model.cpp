#include "sagnac/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sagnac/error.hpp"

namespace sagnac {

using std::numbers::pi;

TrapConfig TrapConfig::natural(double rotation) {
  TrapConfig c;
  c.rotation = rotation;
  return c;
}

void TrapConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw Error(ErrorCode::InvalidParameter,
                  std::string(name) + " must be finite and positive", v);
    }
  };
  positive(mass, "mass");
  positive(hbar, "hbar");
  positive(trap_frequency, "trap frequency");
  positive(radius, "radius");
  if (!std::isfinite(rotation)) {
    throw Error(ErrorCode::InvalidParameter, "rotation must be finite",
                rotation);
  }
}

double TrapConfig::drive_scale() const {
  return std::sqrt(mass * hbar * trap_frequency / 2.0) * radius;
}

std::string_view to_string(ProfileFamily family) {
  switch (family) {
    case ProfileFamily::Flat: return "flat";
    case ProfileFamily::Sinusoidal: return "sinusoidal";
    case ProfileFamily::Cosinusoidal: return "cosinusoidal";
    case ProfileFamily::Tabulated: return "tabulated";
  }
  return "unknown";
}

ProfileFamily parse_family(std::string_view name) {
  if (name == "flat") return ProfileFamily::Flat;
  if (name == "sinusoidal") return ProfileFamily::Sinusoidal;
  if (name == "cosinusoidal") return ProfileFamily::Cosinusoidal;
  if (name == "tabulated") return ProfileFamily::Tabulated;
  throw Error(ErrorCode::InvalidParameter,
              "unknown profile family '" + std::string(name) + "'");
}

SweepProfile::SweepProfile(ProfileFamily family, double duration)
    : family_(family), duration_(duration) {
  if (!(std::isfinite(duration) && duration > 0.0)) {
    throw Error(ErrorCode::NonPositiveDuration,
                "interrogation time must be positive", duration);
  }
}

SweepProfile SweepProfile::flat(double duration) {
  return SweepProfile(ProfileFamily::Flat, duration);
}

SweepProfile SweepProfile::sinusoidal(double duration) {
  SweepProfile p(ProfileFamily::Sinusoidal, duration);
  p.breakpoints_ = {0.5 * duration};
  return p;
}

SweepProfile SweepProfile::cosinusoidal(double duration) {
  return SweepProfile(ProfileFamily::Cosinusoidal, duration);
}

SweepProfile SweepProfile::tabulated(double duration,
                                     std::span<const double> samples) {
  SweepProfile p(ProfileFamily::Tabulated, duration);
  if (samples.size() < 2) {
    throw Error(ErrorCode::InvalidParameter,
                "tabulated profile needs at least two samples",
                static_cast<double>(samples.size()));
  }
  for (double s : samples) {
    if (!std::isfinite(s)) {
      throw Error(ErrorCode::InvalidParameter, "non-finite sample");
    }
    if (s < 0.0) {
      throw Error(ErrorCode::NegativeSample, "samples must be non-negative", s);
    }
  }
  // Trapezoid rule is exact for the piecewise-linear interpolant.
  const double dt = duration / static_cast<double>(samples.size() - 1);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    area += 0.5 * (samples[i] + samples[i + 1]) * dt;
  }
  if (!(area > 0.0)) {
    throw Error(ErrorCode::ZeroProfile, "all samples are zero");
  }
  p.rescale_ = pi / area;
  p.samples_.reserve(samples.size());
  for (double s : samples) p.samples_.push_back(s * p.rescale_);
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    p.breakpoints_.push_back(dt * static_cast<double>(i));
  }
  return p;
}

double SweepProfile::operator()(double t) const {
  if (!(t >= 0.0 && t <= duration_)) return 0.0;
  const double T = duration_;
  switch (family_) {
    case ProfileFamily::Flat:
      return pi / T;
    case ProfileFamily::Sinusoidal:
      return pi * pi * std::abs(std::sin(2.0 * pi * t / T)) / (2.0 * T);
    case ProfileFamily::Cosinusoidal:
      return (pi / T) * (1.0 - std::cos(2.0 * pi * t / T));
    case ProfileFamily::Tabulated: {
      const std::size_t intervals = samples_.size() - 1;
      const double x = t / T * static_cast<double>(intervals);
      const std::size_t i =
          std::min(static_cast<std::size_t>(x), intervals - 1);
      const double frac = x - static_cast<double>(i);
      return samples_[i] + frac * (samples_[i + 1] - samples_[i]);
    }
  }
  return 0.0;
}

SweepProfile make_profile(ProfileFamily family, double duration,
                          std::span<const double> samples) {
  switch (family) {
    case ProfileFamily::Flat: return SweepProfile::flat(duration);
    case ProfileFamily::Sinusoidal: return SweepProfile::sinusoidal(duration);
    case ProfileFamily::Cosinusoidal: return SweepProfile::cosinusoidal(duration);
    case ProfileFamily::Tabulated: return SweepProfile::tabulated(duration, samples);
  }
  throw Error(ErrorCode::InvalidParameter, "unknown profile family");
}

double lambda_drive(const TrapConfig& config, const SweepProfile& profile,
                    Branch branch, double t) {
  return config.drive_scale() *
         (config.rotation + sweep_sign(branch) * profile(t));
}

}  // namespace sagnac
