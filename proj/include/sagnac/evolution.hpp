#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "sagnac/model.hpp"

namespace sagnac {

/// One sample of a branch trajectory. The running integrals are accumulated
/// from 0 up to `t`.
struct TrajectoryPoint {
  double t = 0.0;
  std::complex<double> alpha;  // coherent amplitude alpha_eta(t)
  double phase = 0.0;          // phi_eta(t), unwrapped
  double alpha_sq_integral = 0.0;  // integral |alpha|^2 dt
  double geometric_integral = 0.0;  // -integral Im(conj(alpha) d alpha)
};

/// Closed-form evolution of one spin branch: the oscillator stays in the
/// coherent state exp[i(phi - omega_0 t / 2)] |alpha(t)>.
struct BranchEvolution {
  Branch branch = Branch::Up;
  double trap_frequency = 1.0;
  std::vector<TrajectoryPoint> path;  // strictly increasing t over [0, T]

  const TrajectoryPoint& final() const { return path.back(); }
  std::complex<double> final_alpha() const { return path.back().alpha; }
  double final_phase() const { return path.back().phase; }
  double duration() const { return path.back().t; }

  /// Total phase of the state including the zero-point term -omega_0 t / 2.
  double global_phase(std::size_t i) const {
    return path[i].phase - 0.5 * trap_frequency * path[i].t;
  }

  std::vector<std::complex<double>> amplitudes() const;
};

inline constexpr std::size_t kMinTrajectorySamples = 16;

/// alpha_eta(t) = -(1/hbar) integral_0^t lambda_eta(tau) exp[i omega_0 (tau - t)] dtau
/// by adaptive quadrature.
std::complex<double> alpha_at(const TrapConfig& config,
                              const SweepProfile& profile, Branch branch,
                              double t, double tolerance = 1e-10);

/// phi_eta(t) = (1/hbar^2) integral_0^t integral_0^tau1
///   lambda(tau1) lambda(tau2) sin[omega_0 (tau1 - tau2)] dtau2 dtau1
/// by nested adaptive quadrature.
double phi_at(const TrapConfig& config, const SweepProfile& profile,
              Branch branch, double t, double tolerance = 1e-8);

/// Samples the trajectory on a uniform grid of `intervals + 1` points over
/// [0, T] in a single sweep. Each grid interval is split at profile kinks and
/// into panels short against the trap period; on each panel a Gauss-Legendre
/// rule integrates the running moments of lambda exp(i omega_0 t).
BranchEvolution sample_trajectory(const TrapConfig& config,
                                  const SweepProfile& profile, Branch branch,
                                  std::size_t intervals);

}  // namespace sagnac
