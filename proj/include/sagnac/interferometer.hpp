#pragma once

#include <complex>

#include "sagnac/evolution.hpp"
#include "sagnac/model.hpp"

namespace sagnac {

/// Spin readout after the closing pi/2 pulse, for the protocol
/// Y(pi/2) U(T) Y(-pi/2) acting on |1> and the oscillator vacuum.
struct InterferometerResult {
  std::complex<double> delta_alpha;  // alpha_0(T) - alpha_1(T)
  std::complex<double> coherence;    // C_{1,0}
  double contrast = 1.0;             // |C_{1,0}| = exp(-|delta_alpha|^2 / 2)
  double phase = 0.0;                // phi_I, unwrapped
  double principal_phase = 0.0;      // arg C_{1,0} in (-pi, pi]
  double sagnac_phase = 0.0;         // phi_S
  double sigma_z = -1.0;             // signal <sigma_z> = -|C| cos(phi_I)
  double sigma_y = 0.0;              // <sigma_y> = -|C| sin(phi_I)
};

/// phi_S = 2 pi m r^2 Omega / hbar.
double sagnac_phase(const TrapConfig& config);

/// d phi_I / d Omega. phi_I is linear in Omega because the spectrum only
/// depends on the sweep profile.
double phase_slope(const TrapConfig& config, const SweepProfile& profile);

/// phi_I = phi_S {1 - sqrt(2/pi) Re W(omega_0)}.
double interferometer_phase_closed(const TrapConfig& config,
                                   const SweepProfile& profile);

struct PhaseIntegralParts {
  double phase_difference = 0.0;  // phi_0(T) - phi_1(T)
  double overlap_term = 0.0;      // Im(conj(alpha_1(T)) alpha_0(T))
  double total() const { return phase_difference + overlap_term; }
};

/// phi_I assembled from the per-branch integral definitions.
PhaseIntegralParts interferometer_phase_parts(const TrapConfig& config,
                                              const SweepProfile& profile);

inline double interferometer_phase_integral(const TrapConfig& config,
                                            const SweepProfile& profile) {
  return interferometer_phase_parts(config, profile).total();
}

/// alpha_0(T) - alpha_1(T) = -2 r sqrt(pi m omega_0 / hbar) conj(W(omega_0))
///                            exp(-i omega_0 T).
std::complex<double> delta_alpha(const TrapConfig& config,
                                 const SweepProfile& profile);

/// <alpha_1|alpha_0> exp{-i [phi_1(T) - phi_0(T)]} from two branch
/// evolutions.
std::complex<double> coherence_from_branches(const BranchEvolution& up,
                                             const BranchEvolution& down);

InterferometerResult readout(const TrapConfig& config,
                             const SweepProfile& profile);

}  // namespace sagnac
