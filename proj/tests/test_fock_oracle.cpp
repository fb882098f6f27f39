#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "sagnac/error.hpp"
#include "sagnac/evolution.hpp"
#include "sagnac/fock_oracle.hpp"
#include "sagnac/interferometer.hpp"

using namespace sagnac;
using doctest::Approx;
using std::numbers::pi;

namespace {

const TrapConfig kFig = TrapConfig::natural(0.1);

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidParameter;
}

}  // namespace

TEST_CASE("step propagator matches a dense matrix exponential") {
  for (double lambda : {0.0, 0.4, -1.3}) {
    const std::size_t n = 24;
    const double dt = 0.37;
    const Eigen::MatrixXcd h = branch_generator(kFig, lambda, n);
    CHECK((h - h.adjoint()).norm() < 1e-15);
    const Eigen::MatrixXcd reference = (std::complex<double>(0.0, -dt) * h).exp();
    const Eigen::MatrixXcd u = step_propagator(kFig, lambda, dt, n);
    CHECK((u - reference).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((u.adjoint() * u - Eigen::MatrixXcd::Identity(n, n)).norm() < 1e-12);
  }
}

TEST_CASE("undriven step only rotates phases") {
  const auto u = step_propagator(kFig, 0.0, 0.5, 10);
  for (int n = 0; n < 10; ++n) {
    CHECK(std::abs(u(n, n) - std::polar(1.0, -0.5 * (n + 0.5))) < 1e-14);
  }
}

TEST_CASE("coherent state helpers") {
  const std::complex<double> alpha(0.3, -0.8);
  const auto psi = coherent_state(alpha, 40);
  CHECK(psi.norm() == Approx(1.0).epsilon(1e-14));
  FockState s;
  s.coefficients = psi;
  CHECK(std::abs(s.mean_annihilation() - alpha) < 1e-12);
  CHECK(std::abs(s.overlap_with_coherent(alpha)) == Approx(1.0).epsilon(1e-14));
  CHECK(tail_mass(psi) < 1e-20);
}

TEST_CASE("negligible drive keeps the vacuum") {
  auto c = TrapConfig::natural(0.0);
  c.radius = 1e-14;
  const auto p = SweepProfile::flat(2.0 * pi);
  FockOptions o;
  o.n_max = 8;
  o.steps = 100;
  const auto s = evolve_fock(c, p, Branch::Up, o);
  // exp(-i omega_0 T / 2) = -1 at T = 2 pi.
  CHECK(std::abs(s.coefficients[0] + 1.0) < 1e-12);
  CHECK(std::abs(coherence_fock(c, p, o) - 1.0) < 1e-12);
}

TEST_CASE("flat scheme branch state") {
  const auto p = SweepProfile::flat(2.0 * pi);
  const auto s = evolve_fock(kFig, p, Branch::Up);
  CHECK(std::abs(s.mean_annihilation()) < 1e-4);
  const double phase = phi_at(kFig, p, Branch::Up, 2.0 * pi) - pi;
  const auto expected = std::polar(1.0, phase);
  CHECK(std::abs(s.overlap_with_coherent(0.0) - expected) < 1e-4);
  CHECK(s.norm_drift < 1e-8);
  CHECK(s.max_tail_mass < 1e-10);
  REQUIRE(s.step_error.has_value());
  CHECK(*s.step_error < 1e-5);
}

TEST_CASE("midway amplitude") {
  FockOptions o;
  o.until = pi;
  const auto s = evolve_fock(kFig, SweepProfile::flat(2.0 * pi), Branch::Up, o);
  CHECK(s.time == Approx(pi));
  CHECK(std::abs(s.mean_annihilation() - std::complex<double>(0.0, 0.8485281)) < 1e-4);
  o.until = 7.0;
  CHECK(code_of([&] { evolve_fock(kFig, SweepProfile::flat(2.0 * pi), Branch::Up, o); }) ==
        ErrorCode::TimeOutOfRange);
}

TEST_CASE("coherence examples") {
  const auto c = coherence_fock(kFig, SweepProfile::flat(2.0 * pi));
  CHECK(std::abs(c) == Approx(1.0).epsilon(1e-4));
  CHECK(std::arg(c) == Approx(0.2 * pi).epsilon(1e-4));
  const auto d = coherence_fock(kFig, SweepProfile::flat(pi));
  CHECK(std::abs(std::abs(d) - std::exp(-4.0)) < 1e-4);
  CHECK(std::abs(d) <= 1.0 + 1e-8);
}

TEST_CASE("oracle rows at design points") {
  for (auto p : {SweepProfile::flat(2.0 * pi), SweepProfile::flat(6.0 * pi),
                 SweepProfile::sinusoidal(2.0 * pi), SweepProfile::cosinusoidal(4.0 * pi),
                 SweepProfile::cosinusoidal(8.0 * pi)}) {
    const auto row = compare_with_oracle("scheme", kFig, p);
    CHECK(row.pass);
    CHECK(row.discrepancy < 1e-4);
    CHECK(row.scheme == "scheme");
  }
}

TEST_CASE("unwrapping against the closed form") {
  // A large rotation pushes phi_I past pi; the oracle only sees the
  // principal value.
  const auto c = TrapConfig::natural(0.9);
  const auto row = compare_with_oracle("fast", c, SweepProfile::flat(2.0 * pi));
  CHECK(row.phase_closed > pi);
  CHECK(row.pass);
  CHECK(row.phase_fock == Approx(row.phase_closed).epsilon(1e-6));
}

TEST_CASE("spin blocks never mix") {
  for (auto p : {SweepProfile::sinusoidal(2.0 * pi), SweepProfile::flat(pi)}) {
    FockOptions o;
    o.steps = 1024;
    CHECK(block_diagonality_defect(kFig, p, o) < 1e-10);
  }
}

TEST_CASE("resource guards") {
  const auto p = SweepProfile::flat(2.0 * pi);
  FockOptions o;
  o.n_max = 7;
  CHECK(code_of([&] { evolve_fock(kFig, p, Branch::Up, o); }) ==
        ErrorCode::TruncationInsufficient);
  o = {};
  o.steps = 99;
  CHECK(code_of([&] { evolve_fock(kFig, p, Branch::Up, o); }) ==
        ErrorCode::StepCountInsufficient);

  // Large drive overflows a small basis.
  auto strong = kFig;
  strong.radius = 4.0;
  o = {};
  o.n_max = 12;
  CHECK(code_of([&] { evolve_fock(strong, p, Branch::Up, o); }) ==
        ErrorCode::TruncationInsufficient);

  // Coarse steps fail the step-halving check.
  o = {};
  o.steps = 128;
  CHECK(code_of([&] { evolve_fock(kFig, SweepProfile::cosinusoidal(8.0 * pi), Branch::Up, o); }) ==
        ErrorCode::StepCountInsufficient);
}

TEST_CASE("second-order convergence in the step size") {
  const auto p = SweepProfile::sinusoidal(2.0 * pi);
  const auto closed = readout(kFig, p).coherence;
  FockOptions o;
  o.check_steps = false;
  auto error = [&](std::size_t steps) {
    o.steps = steps;
    return std::abs(coherence_fock(kFig, p, o) - closed);
  };
  const double ratio = error(200) / error(400);
  CHECK(ratio == Approx(4.0).epsilon(0.3));
}
