#pragma once

#include <complex>

#include "sagnac/model.hpp"
#include "sagnac/quadrature.hpp"

namespace sagnac {

enum class SpectrumMethod { ClosedForm, Quadrature };

/// Fourier transform of the zero-extended sweep profile,
///   W(omega) = (2 pi)^(-1/2) * integral W_P(t) exp(-i omega t) dt.
struct SpectrumValue {
  double omega = 0.0;
  std::complex<double> value;
  SpectrumMethod method = SpectrumMethod::Quadrature;
};

/// Default absolute tolerance of the spectral quadratures.
inline constexpr double kSpectrumTolerance = 1e-10;

SpectrumValue spectrum_numeric(const SweepProfile& profile, double omega,
                               double tolerance = kSpectrumTolerance);

/// Closed forms for the analytic families. Removable singularities at
/// omega T = 0 and omega T = +-2 pi are evaluated through factored forms
/// with Taylor series inside a 1e-4 guard band.
SpectrumValue spectrum_closed_form(ProfileFamily family, double duration,
                                   double omega);

/// d/d omega Re W(omega), from the first-moment integral
///   -(2 pi)^(-1/2) * integral_0^T tau omega_P(tau) sin(omega tau) d tau.
double spectrum_derivative(const SweepProfile& profile, double omega,
                           double tolerance = kSpectrumTolerance);

/// sqrt(pi / 2): W(0) for every admissible profile, and the bound on |Re W|.
inline const double kSpectrumAtZero = std::sqrt(std::numbers::pi / 2.0);

}  // namespace sagnac
