#include "sagnac/geometry.hpp"

#include <cmath>

#include "sagnac/error.hpp"
#include "sagnac/interferometer.hpp"
#include "sagnac/spectrum.hpp"

namespace sagnac {

using std::numbers::pi;

std::string_view to_string(PhaseClass c) {
  switch (c) {
    case PhaseClass::PureGeometric: return "PureGeometric";
    case PhaseClass::UnconventionalGeometric: return "UnconventionalGeometric";
    case PhaseClass::Dynamic: return "Dynamic";
    case PhaseClass::Undefined: return "Undefined";
  }
  return "Undefined";
}

double PhaseDecomposition::kappa_value() const {
  if (!kappa) {
    throw Error(ErrorCode::KappaUndefined,
                "kappa requires W(omega_0) = 0 and a nonzero geometric part",
                delta_geometric);
  }
  return *kappa;
}

double branch_dynamic_phase(const BranchEvolution& evolution) {
  const auto& end = evolution.final();
  const double w0 = evolution.trap_frequency;
  return 2.0 * end.phase - w0 * end.alpha_sq_integral - 0.5 * w0 * end.t;
}

double branch_geometric_phase(const BranchEvolution& evolution) {
  return evolution.final().geometric_integral;
}

double path_geometric_phase(std::span<const std::complex<double>> path) {
  if (path.size() < 3) {
    throw Error(ErrorCode::DegeneratePath, "need at least three points",
                static_cast<double>(path.size()));
  }
  double sum = 0.0;
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    sum -= (std::conj(path[k]) * (path[k + 1] - path[k])).imag();
  }
  return sum;
}

double shoelace_area(std::span<const std::complex<double>> path) {
  if (path.size() < 3) {
    throw Error(ErrorCode::DegeneratePath, "need at least three points",
                static_cast<double>(path.size()));
  }
  double twice = 0.0;
  for (std::size_t k = 0; k < path.size(); ++k) {
    const auto& a = path[k];
    const auto& b = path[(k + 1) % path.size()];
    twice += a.real() * b.imag() - b.real() * a.imag();
  }
  return 0.5 * twice;
}

PhaseDecomposition decompose(const TrapConfig& config,
                             const SweepProfile& profile,
                             std::size_t intervals) {
  const double w0 = config.trap_frequency;
  const double T = profile.duration();

  PhaseDecomposition d;
  d.sagnac_phase = sagnac_phase(config);
  d.spectrum_at_trap = spectrum_numeric(profile, w0).value;
  const double slope = spectrum_derivative(profile, w0);
  d.xi0 = w0 * slope;
  d.xi = d.xi0 - w0 * T * d.spectrum_at_trap.imag();
  d.interferometer_phase =
      d.sagnac_phase * (1.0 - std::sqrt(2.0 / pi) * d.spectrum_at_trap.real());
  d.delta_geometric = std::sqrt(2.0 / pi) * d.sagnac_phase * d.xi;

  const auto up = sample_trajectory(config, profile, Branch::Up, intervals);
  const auto down = sample_trajectory(config, profile, Branch::Down, intervals);
  d.branch_dynamic = {branch_dynamic_phase(up), branch_dynamic_phase(down)};
  d.branch_geometric = {branch_geometric_phase(up),
                        branch_geometric_phase(down)};
  // |alpha_0 conj(alpha_1)| sin(arg alpha_0 - arg alpha_1); zero when either
  // amplitude vanishes.
  d.residual_angle = (std::conj(down.final_alpha()) * up.final_alpha()).imag();
  d.delta_dynamic = d.branch_dynamic[0] - d.branch_dynamic[1];
  d.delta_geometric_path =
      d.branch_geometric[0] - d.branch_geometric[1] + d.residual_angle;

  const double scale = std::max(1.0, std::abs(d.interferometer_phase));
  const bool no_dynamic = std::abs(d.delta_dynamic) <= kClassTolerance * scale;
  const bool no_geometric =
      std::abs(d.delta_geometric) <= kClassTolerance * scale;
  if (no_dynamic && no_geometric) {
    d.phase_class = PhaseClass::Undefined;
  } else if (no_dynamic) {
    d.phase_class = PhaseClass::PureGeometric;
  } else if (no_geometric) {
    d.phase_class = PhaseClass::Dynamic;
  } else {
    d.phase_class = PhaseClass::UnconventionalGeometric;
  }

  const bool geometric_class = d.phase_class == PhaseClass::PureGeometric ||
                               d.phase_class == PhaseClass::UnconventionalGeometric;
  if (geometric_class &&
      std::abs(d.spectrum_at_trap) <= kSpectrumZeroTolerance &&
      std::abs(d.delta_geometric) > 1e-12 && d.xi0 != 0.0) {
    d.kappa = std::sqrt(pi / 2.0) / d.xi0;
  }
  return d;
}

}  // namespace sagnac
