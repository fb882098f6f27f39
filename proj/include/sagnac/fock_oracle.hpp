#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sagnac/model.hpp"

namespace sagnac {

/// Brute-force propagation in a truncated number-state basis. Used to check
/// the closed-form evolution independently.
struct FockOptions {
  std::size_t n_max = 40;
  std::size_t steps = 4096;
  /// Propagate to this time instead of the full interrogation time.
  std::optional<double> until;
  /// Step-halving check: Richardson estimate of the final-state error must
  /// stay below this.
  double step_tolerance = 1e-5;
  bool check_steps = true;
  /// Largest allowed mass in the top 10% of levels at any step.
  double tail_tolerance = 1e-10;
};

struct FockState {
  Branch branch = Branch::Up;
  double time = 0.0;
  Eigen::VectorXcd coefficients;  // amplitudes of |0>, ..., |n_max - 1>
  double max_tail_mass = 0.0;
  double norm_drift = 0.0;  // max |norm - 1| over the run
  std::optional<double> step_error;  // Richardson estimate, if checked

  double norm() const { return coefficients.norm(); }
  /// <a>
  std::complex<double> mean_annihilation() const;
  /// <alpha|psi> with |alpha> truncated to the same basis.
  std::complex<double> overlap_with_coherent(std::complex<double> alpha) const;
};

/// Mass in the top max(1, ceil(n_max / 10)) levels.
double tail_mass(const Eigen::VectorXcd& psi);

/// Truncated coherent state |alpha>.
Eigen::VectorXcd coherent_state(std::complex<double> alpha, std::size_t n_max);

/// exp(-i H dt / hbar) for H = hbar omega_0 (a^dag a + 1/2) + i lambda (a - a^dag)
/// in the truncated basis, computed from the eigendecomposition of the
/// Hermitian generator.
Eigen::MatrixXcd step_propagator(const TrapConfig& config, double lambda,
                                 double dt, std::size_t n_max);

/// The truncated single-branch Hamiltonian divided by hbar.
Eigen::MatrixXcd branch_generator(const TrapConfig& config, double lambda,
                                  std::size_t n_max);

FockState evolve_fock(const TrapConfig& config, const SweepProfile& profile,
                      Branch branch, const FockOptions& options = {});

/// <psi_1(T)|psi_0(T)> from two independent branch propagations.
std::complex<double> coherence_fock(const TrapConfig& config,
                                    const SweepProfile& profile,
                                    const FockOptions& options = {});

/// Propagates (|0> + |1>)/sqrt(2) (x) vacuum under the joint spin-oscillator
/// Hamiltonian H_0 Pi_0 + H_1 Pi_1, built as one dense 2 n_max matrix, and
/// returns the largest deviation from the two independently propagated
/// branches recombined.
double block_diagonality_defect(const TrapConfig& config,
                                const SweepProfile& profile,
                                const FockOptions& options = {});

/// One row of the oracle comparison table.
struct OracleRow {
  std::string scheme;
  double contrast_closed = 0.0;
  double contrast_fock = 0.0;
  double phase_closed = 0.0;  // unwrapped
  double phase_fock = 0.0;    // principal value unwrapped against phase_closed
  double discrepancy = 0.0;   // max of the two absolute differences
  bool pass = false;
};

/// Compares closed-form and truncated-basis coherence for one scheme.
OracleRow compare_with_oracle(const std::string& scheme,
                              const TrapConfig& config,
                              const SweepProfile& profile,
                              const FockOptions& options = {},
                              double tolerance = 1e-4);

}  // namespace sagnac
