#pragma once

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string_view>

#include "sagnac/evolution.hpp"
#include "sagnac/model.hpp"

namespace sagnac {

enum class PhaseClass { PureGeometric, UnconventionalGeometric, Dynamic, Undefined };

std::string_view to_string(PhaseClass c);

/// Split of the interferometer phase into dynamic and geometric parts,
/// phi_I = delta_dynamic + delta_geometric.
struct PhaseDecomposition {
  double interferometer_phase = 0.0;  // phi_I (spectral closed form)
  double sagnac_phase = 0.0;
  std::complex<double> spectrum_at_trap;  // W(omega_0)

  double xi = 0.0;   // omega_0 dRe W - omega_0 T Im W, at omega_0
  double xi0 = 0.0;  // omega_0 dRe W at omega_0

  /// gamma^d_0 - gamma^d_1 from the branch trajectories.
  double delta_dynamic = 0.0;
  /// Geometric difference from the spectral form sqrt(2/pi) phi_S xi.
  double delta_geometric = 0.0;
  /// Geometric difference from the branch trajectories plus residual angle.
  double delta_geometric_path = 0.0;

  std::array<double, 2> branch_dynamic{};    // gamma^d_eta(T)
  std::array<double, 2> branch_geometric{};  // gamma^g_eta(T)
  double residual_angle = 0.0;               // arg <alpha_1(T)|alpha_0(T)>

  /// sqrt(pi/2) / xi0; present only when W(omega_0) = 0 and the geometric
  /// part does not vanish.
  std::optional<double> kappa;
  PhaseClass phase_class = PhaseClass::Undefined;

  /// Throws KappaUndefined when kappa is absent.
  double kappa_value() const;

  /// Half the geometric difference: the phase-space area by which the
  /// trajectory of branch 0 exceeds that of branch 1.
  double area_measure() const { return 0.5 * delta_geometric_path; }
};

/// gamma^d = 2 phi(T) - omega_0 integral |alpha|^2 dt - omega_0 T / 2.
double branch_dynamic_phase(const BranchEvolution& evolution);

/// gamma^g = -integral Im[conj(alpha) d alpha / dt] dt along the trajectory.
double branch_geometric_phase(const BranchEvolution& evolution);

/// Discrete form of the same line integral on a polyline,
/// -sum Im[conj(a_k) (a_{k+1} - a_k)]. Throws DegeneratePath below 3 points.
double path_geometric_phase(std::span<const std::complex<double>> path);

/// Signed polygon area over (Re, Im), positive counter-clockwise; the
/// polygon is closed from the last point back to the first.
double shoelace_area(std::span<const std::complex<double>> path);

/// Classification thresholds, relative to max(1, |phi_I|).
inline constexpr double kClassTolerance = 1e-8;
/// |W(omega_0)| below which kappa is reported.
inline constexpr double kSpectrumZeroTolerance = 1e-8;

/// `intervals` is the trajectory grid used for the path-form quantities.
PhaseDecomposition decompose(const TrapConfig& config,
                             const SweepProfile& profile,
                             std::size_t intervals = 64);

}  // namespace sagnac
