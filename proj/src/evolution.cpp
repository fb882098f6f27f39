#include "sagnac/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sagnac/error.hpp"
#include "sagnac/quadrature.hpp"

namespace sagnac {

namespace {

using cplx = std::complex<double>;

void check_time(const SweepProfile& profile, double t) {
  const double T = profile.duration();
  if (!(t >= 0.0 && t <= T * (1.0 + 1e-12))) {
    throw Error(ErrorCode::TimeOutOfRange,
                "t = " + std::to_string(t) + " outside [0, " +
                    std::to_string(T) + "]",
                t);
  }
}

const quad::GaussLegendre<10>& panel_rule() {
  static const quad::GaussLegendre<10> rule;
  return rule;
}

struct SweepState {
  cplx moment;  // integral_0^t lambda(tau) exp(i omega_0 tau) dtau
  double phase = 0.0;
  double alpha_sq = 0.0;
  double geometric = 0.0;
};

class PanelSweeper {
 public:
  PanelSweeper(const TrapConfig& config, const SweepProfile& profile,
               Branch branch)
      : config_(config), profile_(profile), branch_(branch) {}

  double lambda(double t) const {
    return lambda_drive(config_, profile_, branch_, t);
  }

  cplx alpha(const cplx& moment, double t) const {
    return -std::polar(1.0, -config_.trap_frequency * t) * moment /
           config_.hbar;
  }

  cplx moment_increment(double a, double b) const {
    const double w0 = config_.trap_frequency;
    return panel_rule().integrate<cplx>(
        [&](double s) { return lambda(s) * std::polar(1.0, w0 * s); }, a, b);
  }

  // Advances the state across [a, b], which must contain no profile kink.
  void advance(SweepState& state, double a, double b) const {
    const auto& rule = panel_rule();
    const double w0 = config_.trap_frequency;
    const double hbar = config_.hbar;
    for (std::size_t j = 0; j < rule.order; ++j) {
      const double tau = rule.node(j, a, b);
      const double w = rule.weight(j, a, b);
      const cplx al = alpha(state.moment + moment_increment(a, tau), tau);
      const double lam = lambda(tau);
      const cplx velocity = cplx(0.0, -w0) * al - lam / hbar;
      state.phase += w * lam * al.imag() / hbar;
      state.alpha_sq += w * std::norm(al);
      state.geometric -= w * (std::conj(al) * velocity).imag();
    }
    state.moment += moment_increment(a, b);
  }

 private:
  const TrapConfig& config_;
  const SweepProfile& profile_;
  Branch branch_;
};

}  // namespace

std::vector<std::complex<double>> BranchEvolution::amplitudes() const {
  std::vector<std::complex<double>> out;
  out.reserve(path.size());
  for (const auto& p : path) out.push_back(p.alpha);
  return out;
}

std::complex<double> alpha_at(const TrapConfig& config,
                              const SweepProfile& profile, Branch branch,
                              double t, double tolerance) {
  check_time(profile, t);
  t = std::min(t, profile.duration());
  const double w0 = config.trap_frequency;
  auto integrand = [&](double tau) {
    return lambda_drive(config, profile, branch, tau) *
           std::polar(1.0, w0 * (tau - t));
  };
  const cplx integral = quad::integrate_complex(
      integrand, 0.0, t, profile.breakpoints(),
      {.absolute = tolerance * config.hbar});
  return -integral / config.hbar;
}

double phi_at(const TrapConfig& config, const SweepProfile& profile,
              Branch branch, double t, double tolerance) {
  check_time(profile, t);
  t = std::min(t, profile.duration());
  const double w0 = config.trap_frequency;
  const double hbar2 = config.hbar * config.hbar;
  // The inner error is weighted by |lambda| over [0, t] in the outer integral.
  const double lam_bound =
      config.drive_scale() * (std::abs(config.rotation) * t + std::numbers::pi);
  const double inner_tol =
      0.1 * tolerance * hbar2 / std::max(lam_bound, 1e-300);
  auto inner = [&](double tau1) {
    return quad::integrate_real(
        [&](double tau2) {
          return lambda_drive(config, profile, branch, tau2) *
                 std::sin(w0 * (tau1 - tau2));
        },
        0.0, tau1, profile.breakpoints(), {.absolute = inner_tol});
  };
  auto outer = [&](double tau1) {
    return lambda_drive(config, profile, branch, tau1) * inner(tau1);
  };
  return quad::integrate_real(outer, 0.0, t, profile.breakpoints(),
                              {.absolute = 0.5 * tolerance * hbar2}) /
         hbar2;
}

BranchEvolution sample_trajectory(const TrapConfig& config,
                                  const SweepProfile& profile, Branch branch,
                                  std::size_t intervals) {
  if (intervals < kMinTrajectorySamples) {
    throw Error(ErrorCode::InsufficientResolution,
                "trajectory needs at least " +
                    std::to_string(kMinTrajectorySamples) + " intervals",
                static_cast<double>(intervals));
  }
  const double T = profile.duration();
  const double w0 = config.trap_frequency;
  // Panels no longer than 1/(2 omega_0) and T/32 keep the 10-point rule at
  // round-off level for every supported profile.
  const double max_panel = std::min(0.5 / w0, T / 32.0);

  BranchEvolution out;
  out.branch = branch;
  out.trap_frequency = w0;
  out.path.reserve(intervals + 1);
  out.path.push_back({0.0, {0.0, 0.0}, 0.0, 0.0, 0.0});

  PanelSweeper sweeper(config, profile, branch);
  SweepState state;
  const auto kinks = profile.breakpoints();
  auto kink = kinks.begin();
  const double dt = T / static_cast<double>(intervals);

  std::vector<double> edges;
  for (std::size_t k = 0; k < intervals; ++k) {
    const double a = dt * static_cast<double>(k);
    const double b = k + 1 == intervals ? T : dt * static_cast<double>(k + 1);
    edges.assign({a});
    while (kink != kinks.end() && *kink <= a) ++kink;
    for (auto it = kink; it != kinks.end() && *it < b; ++it) edges.push_back(*it);
    edges.push_back(b);
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double lo = edges[e];
      const double hi = edges[e + 1];
      if (!(hi > lo)) continue;
      const auto pieces =
          static_cast<std::size_t>(std::ceil((hi - lo) / max_panel));
      const double h = (hi - lo) / static_cast<double>(pieces);
      for (std::size_t p = 0; p < pieces; ++p) {
        const double pa = lo + h * static_cast<double>(p);
        const double pb = p + 1 == pieces ? hi : pa + h;
        sweeper.advance(state, pa, pb);
      }
    }
    out.path.push_back({b, sweeper.alpha(state.moment, b), state.phase,
                        state.alpha_sq, state.geometric});
  }
  return out;
}

}  // namespace sagnac
