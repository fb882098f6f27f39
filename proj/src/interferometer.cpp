#include "sagnac/interferometer.hpp"

#include <cmath>

#include "sagnac/spectrum.hpp"

namespace sagnac {

using std::numbers::pi;

namespace {

// Branch sweeps only feed endpoint values here; the panel rule is converged
// well below this many grid intervals.
constexpr std::size_t kEndpointIntervals = 64;

}  // namespace

double sagnac_phase(const TrapConfig& config) {
  return 2.0 * pi * config.mass * config.radius * config.radius *
         config.rotation / config.hbar;
}

double phase_slope(const TrapConfig& config, const SweepProfile& profile) {
  const double re = spectrum_numeric(profile, config.trap_frequency).value.real();
  return 2.0 * pi * config.mass * config.radius * config.radius / config.hbar *
         (1.0 - std::sqrt(2.0 / pi) * re);
}

double interferometer_phase_closed(const TrapConfig& config,
                                   const SweepProfile& profile) {
  const double re = spectrum_numeric(profile, config.trap_frequency).value.real();
  return sagnac_phase(config) * (1.0 - std::sqrt(2.0 / pi) * re);
}

PhaseIntegralParts interferometer_phase_parts(const TrapConfig& config,
                                              const SweepProfile& profile) {
  const auto up = sample_trajectory(config, profile, Branch::Up,
                                    kEndpointIntervals);
  const auto down = sample_trajectory(config, profile, Branch::Down,
                                      kEndpointIntervals);
  PhaseIntegralParts parts;
  parts.phase_difference = up.final_phase() - down.final_phase();
  parts.overlap_term =
      (std::conj(down.final_alpha()) * up.final_alpha()).imag();
  return parts;
}

std::complex<double> delta_alpha(const TrapConfig& config,
                                 const SweepProfile& profile) {
  const double w0 = config.trap_frequency;
  const auto w = spectrum_numeric(profile, w0).value;
  return -2.0 * config.radius * std::sqrt(pi * config.mass * w0 / config.hbar) *
         std::conj(w) * std::polar(1.0, -w0 * profile.duration());
}

std::complex<double> coherence_from_branches(const BranchEvolution& up,
                                             const BranchEvolution& down) {
  const auto a0 = up.final_alpha();
  const auto a1 = down.final_alpha();
  // <b|a> = exp(-|b|^2/2 - |a|^2/2 + conj(b) a)
  const auto overlap =
      std::exp(-0.5 * std::norm(a1) - 0.5 * std::norm(a0) + std::conj(a1) * a0);
  return overlap *
         std::polar(1.0, up.final_phase() - down.final_phase());
}

InterferometerResult readout(const TrapConfig& config,
                             const SweepProfile& profile) {
  InterferometerResult r;
  r.delta_alpha = delta_alpha(config, profile);
  r.contrast = std::exp(-0.5 * std::norm(r.delta_alpha));
  r.sagnac_phase = sagnac_phase(config);
  r.phase = interferometer_phase_closed(config, profile);
  r.coherence = std::polar(r.contrast, r.phase);
  r.principal_phase = std::arg(r.coherence);
  r.sigma_z = -r.contrast * std::cos(r.phase);
  r.sigma_y = -r.contrast * std::sin(r.phase);
  return r;
}

}  // namespace sagnac
