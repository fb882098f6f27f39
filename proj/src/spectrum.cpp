#include "sagnac/spectrum.hpp"

#include <cmath>

#include "sagnac/error.hpp"

namespace sagnac {

using std::numbers::pi;

namespace {

constexpr double kGuardBand = 1e-4;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * pi);

// sin(u) / u
double sinc(double u) {
  if (std::abs(u) < kGuardBand) {
    const double u2 = u * u;
    return 1.0 - u2 / 6.0 + u2 * u2 / 120.0;
  }
  return std::sin(u) / u;
}

// (cos(u) - 1) / u
double versc(double u) {
  if (std::abs(u) < kGuardBand) {
    const double u2 = u * u;
    return u * (-0.5 + u2 / 24.0 - u2 * u2 / 720.0);
  }
  const double s = std::sin(0.5 * u);
  return -2.0 * s * s / u;
}

std::complex<double> flat_closed(double x) {
  const double s = kSpectrumAtZero;
  return {s * sinc(x), s * versc(x)};
}

std::complex<double> cosinusoidal_closed(double x) {
  // x [1 - (x / 2pi)^2] = x (1 - q)(1 + q) vanishes at 0 and +-2pi, where the
  // numerators sin(x) and cos(x) - 1 vanish too. Shift to the nearest zero u
  // so that sin(x) = sin(u), cos(x) = cos(u) and cancel u exactly.
  const double s = kSpectrumAtZero;
  const double two_pi = 2.0 * pi;
  const double q = x / two_pi;
  if (std::abs(x) <= pi) {
    const double d = (1.0 - q) * (1.0 + q);
    return {s * sinc(x) / d, s * versc(x) / d};
  }
  if (x > 0.0) {
    const double u = x - two_pi;
    const double f = -two_pi * s / (x * (1.0 + q));
    return {f * sinc(u), f * versc(u)};
  }
  const double v = x + two_pi;
  const double f = two_pi * s / (x * (1.0 - q));
  return {f * sinc(v), f * versc(v)};
}

std::complex<double> sinusoidal_closed(double x) {
  const double s = kSpectrumAtZero;
  const double two_pi = 2.0 * pi;
  const double q = x / two_pi;
  if (std::abs(std::abs(x) - two_pi) >= pi) {
    const double c4 = std::cos(0.25 * x);
    const double d = (1.0 - q) * (1.0 + q);
    return {s * c4 * c4 * std::cos(0.5 * x) / d,
            -std::sqrt(two_pi) * c4 * c4 * c4 * std::sin(0.25 * x) / d};
  }
  // Near x = +-2pi the double zero of cos^2(x / 4) absorbs the simple zero of
  // the denominator: with u = x -+ 2pi, cos(x / 4) = -+sin(u / 4).
  if (x > 0.0) {
    const double u = x - two_pi;
    const double sq = sinc(0.25 * u);
    const double re = -two_pi * s * std::cos(0.5 * x) * (u / 16.0) * sq * sq /
                      (1.0 + q);
    const double im = -std::sqrt(two_pi) * two_pi * (u * u / 64.0) * sq * sq *
                      sq * std::cos(0.25 * u) / (1.0 + q);
    return {re, im};
  }
  const double v = x + two_pi;
  const double sq = sinc(0.25 * v);
  const double re =
      two_pi * s * std::cos(0.5 * x) * (v / 16.0) * sq * sq / (1.0 - q);
  const double im = std::sqrt(two_pi) * two_pi * (v * v / 64.0) * sq * sq * sq *
                    std::cos(0.25 * v) / (1.0 - q);
  return {re, im};
}

}  // namespace

SpectrumValue spectrum_numeric(const SweepProfile& profile, double omega,
                               double tolerance) {
  auto integrand = [&](double t) {
    return profile(t) * std::polar(1.0, -omega * t);
  };
  const auto value = quad::integrate_complex(
      integrand, 0.0, profile.duration(), profile.breakpoints(),
      {.absolute = tolerance / kInvSqrt2Pi});
  return {omega, value * kInvSqrt2Pi, SpectrumMethod::Quadrature};
}

SpectrumValue spectrum_closed_form(ProfileFamily family, double duration,
                                   double omega) {
  if (!(duration > 0.0)) {
    throw Error(ErrorCode::NonPositiveDuration,
                "interrogation time must be positive", duration);
  }
  const double x = omega * duration;
  std::complex<double> value;
  switch (family) {
    case ProfileFamily::Flat: value = flat_closed(x); break;
    case ProfileFamily::Sinusoidal: value = sinusoidal_closed(x); break;
    case ProfileFamily::Cosinusoidal: value = cosinusoidal_closed(x); break;
    case ProfileFamily::Tabulated:
      throw Error(ErrorCode::UnsupportedFamily,
                  "tabulated profiles have no closed-form spectrum");
  }
  return {omega, value, SpectrumMethod::ClosedForm};
}

double spectrum_derivative(const SweepProfile& profile, double omega,
                           double tolerance) {
  auto integrand = [&](double t) {
    return t * profile(t) * std::sin(omega * t);
  };
  const double moment =
      quad::integrate_real(integrand, 0.0, profile.duration(),
                           profile.breakpoints(),
                           {.absolute = tolerance / kInvSqrt2Pi});
  return -moment * kInvSqrt2Pi;
}

}  // namespace sagnac
