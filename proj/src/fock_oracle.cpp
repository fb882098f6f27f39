#include "sagnac/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "sagnac/error.hpp"
#include "sagnac/interferometer.hpp"

namespace sagnac {

namespace {

using cplx = std::complex<double>;

constexpr std::size_t kMinLevels = 8;
constexpr std::size_t kMinSteps = 100;

// In the basis |n>' = (-i)^n |n> the generator is real symmetric tridiagonal:
//   diag omega_0 (n + 1/2), off-diagonal (lambda / hbar) sqrt(n).
cplx gauge(std::size_t n) {
  static constexpr cplx phases[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  return phases[n % 4];
}

class TridiagonalStepper {
 public:
  TridiagonalStepper(const TrapConfig& config, std::size_t n_max, double dt)
      : config_(config), n_max_(n_max), dt_(dt) {}

  // exp(-i H' dt) psi' for the generator at drive amplitude lambda.
  void apply(double lambda, Eigen::VectorXcd& psi) {
    if (!cached_ || lambda != cached_lambda_) decompose(lambda);
    Eigen::VectorXcd rotated = vectors_.transpose() * psi;
    rotated.array() *= phases_.array();
    psi = vectors_ * rotated;
  }

  const Eigen::MatrixXd& vectors() const { return vectors_; }
  const Eigen::VectorXcd& phases() const { return phases_; }

  void decompose(double lambda) {
    Eigen::VectorXd diag(n_max_);
    Eigen::VectorXd sub(n_max_ - 1);
    const double w0 = config_.trap_frequency;
    for (std::size_t n = 0; n < n_max_; ++n) {
      diag[n] = w0 * (static_cast<double>(n) + 0.5);
      if (n + 1 < n_max_) {
        sub[n] = lambda / config_.hbar * std::sqrt(static_cast<double>(n + 1));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    vectors_ = solver.eigenvectors();
    phases_.resize(n_max_);
    for (std::size_t k = 0; k < n_max_; ++k) {
      phases_[k] = std::polar(1.0, -solver.eigenvalues()[k] * dt_);
    }
    cached_ = true;
    cached_lambda_ = lambda;
  }

 private:
  const TrapConfig& config_;
  std::size_t n_max_;
  double dt_;
  bool cached_ = false;
  double cached_lambda_ = 0.0;
  Eigen::MatrixXd vectors_;
  Eigen::VectorXcd phases_;
};

void check_options(const FockOptions& options) {
  if (options.n_max < kMinLevels) {
    throw Error(ErrorCode::TruncationInsufficient,
                "need at least " + std::to_string(kMinLevels) + " levels",
                static_cast<double>(options.n_max));
  }
  if (options.steps < kMinSteps) {
    throw Error(ErrorCode::StepCountInsufficient,
                "need at least " + std::to_string(kMinSteps) + " steps",
                static_cast<double>(options.steps));
  }
}

double end_time(const SweepProfile& profile, const FockOptions& options) {
  const double T = profile.duration();
  if (!options.until) return T;
  const double t = *options.until;
  if (!(t >= 0.0 && t <= T * (1.0 + 1e-12))) {
    throw Error(ErrorCode::TimeOutOfRange, "propagation end outside [0, T]", t);
  }
  return std::min(t, T);
}

// Piecewise-constant midpoint Hamiltonian, one exact exponential per step.
FockState propagate(const TrapConfig& config, const SweepProfile& profile,
                    Branch branch, std::size_t n_max, std::size_t steps,
                    double t_end, double tail_tolerance) {
  const double dt = t_end / static_cast<double>(steps);
  TridiagonalStepper stepper(config, n_max, dt);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n_max);
  psi[0] = 1.0;

  FockState state;
  state.branch = branch;
  for (std::size_t k = 0; k < steps; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * dt;
    stepper.apply(lambda_drive(config, profile, branch, mid), psi);
    state.max_tail_mass = std::max(state.max_tail_mass, tail_mass(psi));
    state.norm_drift = std::max(state.norm_drift, std::abs(psi.norm() - 1.0));
  }
  if (state.max_tail_mass > tail_tolerance) {
    throw Error(ErrorCode::TruncationInsufficient,
                "tail mass " + std::to_string(state.max_tail_mass) +
                    " exceeds tolerance with " + std::to_string(n_max) +
                    " levels",
                state.max_tail_mass);
  }
  for (std::size_t n = 0; n < n_max; ++n) psi[n] *= gauge(n);
  state.time = t_end;
  state.coefficients = std::move(psi);
  return state;
}

}  // namespace

double tail_mass(const Eigen::VectorXcd& psi) {
  const auto n = static_cast<std::size_t>(psi.size());
  const std::size_t top = std::max<std::size_t>(1, (n + 9) / 10);
  return psi.tail(static_cast<Eigen::Index>(top)).squaredNorm();
}

Eigen::VectorXcd coherent_state(std::complex<double> alpha, std::size_t n_max) {
  Eigen::VectorXcd psi(n_max);
  cplx term = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 0; n < n_max; ++n) {
    psi[n] = term;
    term *= alpha / std::sqrt(static_cast<double>(n + 1));
  }
  return psi;
}

std::complex<double> FockState::mean_annihilation() const {
  cplx sum = 0.0;
  for (Eigen::Index n = 1; n < coefficients.size(); ++n) {
    sum += std::conj(coefficients[n - 1]) *
           std::sqrt(static_cast<double>(n)) * coefficients[n];
  }
  return sum;
}

std::complex<double> FockState::overlap_with_coherent(
    std::complex<double> alpha) const {
  return coherent_state(alpha, coefficients.size()).dot(coefficients);
}

Eigen::MatrixXcd branch_generator(const TrapConfig& config, double lambda,
                                  std::size_t n_max) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n_max, n_max);
  const double g = lambda / config.hbar;
  for (std::size_t n = 0; n < n_max; ++n) {
    h(n, n) = config.trap_frequency * (static_cast<double>(n) + 0.5);
    if (n >= 1) {
      const double s = std::sqrt(static_cast<double>(n));
      h(n - 1, n) = cplx(0.0, g * s);   // i lambda a
      h(n, n - 1) = cplx(0.0, -g * s);  // -i lambda a^dag
    }
  }
  return h;
}

Eigen::MatrixXcd step_propagator(const TrapConfig& config, double lambda,
                                 double dt, std::size_t n_max) {
  TridiagonalStepper stepper(config, n_max, dt);
  stepper.decompose(lambda);
  const Eigen::MatrixXcd v = stepper.vectors().cast<cplx>();
  Eigen::MatrixXcd u = v * stepper.phases().asDiagonal() * v.transpose();
  for (std::size_t r = 0; r < n_max; ++r) {
    for (std::size_t c = 0; c < n_max; ++c) {
      u(r, c) *= gauge(r) * std::conj(gauge(c));
    }
  }
  return u;
}

FockState evolve_fock(const TrapConfig& config, const SweepProfile& profile,
                      Branch branch, const FockOptions& options) {
  check_options(options);
  const double t_end = end_time(profile, options);
  auto state = propagate(config, profile, branch, options.n_max, options.steps,
                         t_end, options.tail_tolerance);
  if (options.check_steps) {
    const std::size_t coarse_steps = options.steps / 2;
    const auto coarse = propagate(config, profile, branch, options.n_max,
                                  coarse_steps, t_end, options.tail_tolerance);
    // Second-order scheme: error(h) ~ h^2.
    const double ratio = static_cast<double>(options.steps) /
                         static_cast<double>(coarse_steps);
    const double estimate =
        (state.coefficients - coarse.coefficients).norm() / (ratio * ratio - 1.0);
    state.step_error = estimate;
    if (estimate > options.step_tolerance) {
      throw Error(ErrorCode::StepCountInsufficient,
                  "step-halving error estimate " + std::to_string(estimate) +
                      " above " + std::to_string(options.step_tolerance),
                  estimate);
    }
  }
  return state;
}

std::complex<double> coherence_fock(const TrapConfig& config,
                                    const SweepProfile& profile,
                                    const FockOptions& options) {
  const auto up = evolve_fock(config, profile, Branch::Up, options);
  const auto down = evolve_fock(config, profile, Branch::Down, options);
  return down.coefficients.dot(up.coefficients);
}

double block_diagonality_defect(const TrapConfig& config,
                                const SweepProfile& profile,
                                const FockOptions& options) {
  check_options(options);
  const std::size_t n = options.n_max;
  const double t_end = end_time(profile, options);
  const double dt = t_end / static_cast<double>(options.steps);

  Eigen::Matrix2cd pi0 = Eigen::Matrix2cd::Zero();
  Eigen::Matrix2cd pi1 = Eigen::Matrix2cd::Zero();
  pi0(0, 0) = 1.0;
  pi1(1, 1) = 1.0;
  auto kron = [n](const Eigen::Matrix2cd& spin, const Eigen::MatrixXcd& osc) {
    Eigen::MatrixXcd out(2 * n, 2 * n);
    for (Eigen::Index i = 0; i < 2; ++i) {
      for (Eigen::Index j = 0; j < 2; ++j) {
        out.block(i * n, j * n, n, n) = spin(i, j) * osc;
      }
    }
    return out;
  };

  Eigen::VectorXcd joint = Eigen::VectorXcd::Zero(2 * n);
  joint[0] = M_SQRT1_2;
  joint[static_cast<Eigen::Index>(n)] = M_SQRT1_2;

  for (std::size_t k = 0; k < options.steps; ++k) {
    const double mid = (static_cast<double>(k) + 0.5) * dt;
    const Eigen::MatrixXcd h =
        kron(pi0, branch_generator(
                      config, lambda_drive(config, profile, Branch::Up, mid), n)) +
        kron(pi1, branch_generator(
                      config, lambda_drive(config, profile, Branch::Down, mid), n));
    // Taylor series of exp(-i h dt) acting on the state, on substeps short
    // enough for the series to converge quickly.
    const double norm_bound = h.cwiseAbs().colwise().sum().maxCoeff() * dt;
    const auto substeps =
        static_cast<std::size_t>(std::max(1.0, std::ceil(norm_bound)));
    const double h_dt = dt / static_cast<double>(substeps);
    for (std::size_t s = 0; s < substeps; ++s) {
      Eigen::VectorXcd term = joint;
      for (int order = 1; order < 60; ++order) {
        term = (cplx(0.0, -h_dt / order) * (h * term)).eval();
        joint += term;
        if (term.norm() < 1e-18) break;
      }
    }
  }

  auto up = propagate(config, profile, Branch::Up, n, options.steps, t_end,
                      options.tail_tolerance);
  auto down = propagate(config, profile, Branch::Down, n, options.steps, t_end,
                        options.tail_tolerance);
  Eigen::VectorXcd separate(2 * n);
  separate << up.coefficients * M_SQRT1_2, down.coefficients * M_SQRT1_2;
  return (joint - separate).cwiseAbs().maxCoeff();
}

OracleRow compare_with_oracle(const std::string& scheme,
                              const TrapConfig& config,
                              const SweepProfile& profile,
                              const FockOptions& options, double tolerance) {
  OracleRow row;
  row.scheme = scheme;
  const auto closed = readout(config, profile);
  row.contrast_closed = closed.contrast;
  row.phase_closed = closed.phase;
  const auto c = coherence_fock(config, profile, options);
  row.contrast_fock = std::abs(c);
  row.phase_fock =
      row.phase_closed +
      std::remainder(std::arg(c) - row.phase_closed, 2.0 * std::numbers::pi);
  row.discrepancy = std::max(std::abs(row.contrast_fock - row.contrast_closed),
                             std::abs(row.phase_fock - row.phase_closed));
  row.pass = row.discrepancy <= tolerance;
  return row;
}

}  // namespace sagnac
