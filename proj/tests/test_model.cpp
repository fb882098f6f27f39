#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "sagnac/error.hpp"
#include "sagnac/model.hpp"
#include "sagnac/quadrature.hpp"
#include "support.hpp"

using namespace sagnac;
using doctest::Approx;
using std::numbers::pi;

namespace {

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::InvalidParameter;
}

double profile_integral(const SweepProfile& p) {
  return quad::integrate_real([&](double t) { return p(t); }, 0.0, p.duration(),
                              p.breakpoints());
}

}  // namespace

TEST_CASE("natural preset") {
  const auto c = TrapConfig::natural();
  CHECK(c.mass == 1.0);
  CHECK(c.hbar == 1.0);
  CHECK(c.trap_frequency == 1.0);
  CHECK(c.radius == 1.0);
  CHECK(c.rotation == 0.1);
  CHECK(c.drive_scale() == Approx(std::sqrt(0.5)));
  CHECK(c.period() == Approx(2.0 * pi));
}

TEST_CASE("trap validation") {
  for (double TrapConfig::*field : {&TrapConfig::mass, &TrapConfig::hbar,
                                    &TrapConfig::trap_frequency, &TrapConfig::radius}) {
    auto c = TrapConfig::natural();
    c.*field = 0.0;
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidParameter);
    c.*field = -1.0;
    CHECK(code_of([&] { c.validate(); }) == ErrorCode::InvalidParameter);
  }
  auto c = TrapConfig::natural(-3.0);
  CHECK_NOTHROW(c.validate());
  c.rotation = NAN;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("family names round trip") {
  for (auto f : {ProfileFamily::Flat, ProfileFamily::Sinusoidal,
                 ProfileFamily::Cosinusoidal, ProfileFamily::Tabulated}) {
    CHECK(parse_family(to_string(f)) == f);
  }
  CHECK_THROWS_AS(parse_family("square"), Error);
}

TEST_CASE("analytic profile values") {
  const auto flat = SweepProfile::flat(2.0 * pi);
  CHECK(flat(1.0) == Approx(0.5));
  CHECK(flat(0.0) == Approx(0.5));
  CHECK(flat(-1.0) == 0.0);
  CHECK(flat(2.0 * pi + 1e-9) == 0.0);

  const auto sinus = SweepProfile::sinusoidal(2.0 * pi);
  CHECK(sinus(pi / 2.0) == Approx(pi / 4.0));
  CHECK(sinus(3.0 * pi / 2.0) == Approx(pi / 4.0));  // |sin|, not sin
  CHECK(sinus(pi) == Approx(0.0).epsilon(1e-15));
  REQUIRE(sinus.breakpoints().size() == 1);
  CHECK(sinus.breakpoints()[0] == Approx(pi));

  const auto cosine = SweepProfile::cosinusoidal(4.0 * pi);
  CHECK(eval_profile(cosine, 2.0 * pi) == Approx(0.5));
  CHECK(cosine(0.0) == Approx(0.0));
}

TEST_CASE("non-positive duration is rejected") {
  for (double T : {0.0, -1.0, std::nan("")}) {
    CHECK(code_of([&] { SweepProfile::flat(T); }) == ErrorCode::NonPositiveDuration);
    CHECK(code_of([&] { make_profile(ProfileFamily::Cosinusoidal, T); }) ==
          ErrorCode::NonPositiveDuration);
  }
}

TEST_CASE("tabulated normalization") {
  // Integral 2 pi before rescaling.
  const std::vector<double> ones = {1.0, 1.0, 1.0};
  const auto p = SweepProfile::tabulated(2.0 * pi, ones);
  CHECK(p.rescale_factor() == Approx(0.5));
  CHECK(p(1.0) == Approx(0.5));
  CHECK(p.samples().size() == 3);
  CHECK(p.breakpoints().size() == 1);

  // Linear interpolation between nodes.
  const std::vector<double> ramp = {0.0, 2.0};
  const auto r = SweepProfile::tabulated(1.0, ramp);
  CHECK(r(0.25) == Approx(0.25 * r(1.0)));
  CHECK(r(1.0) == Approx(2.0 * pi));
}

TEST_CASE("tabulated input errors") {
  const std::vector<double> negative = {1.0, -0.1, 1.0};
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  const std::vector<double> single = {1.0};
  CHECK(code_of([&] { SweepProfile::tabulated(1.0, negative); }) == ErrorCode::NegativeSample);
  CHECK(code_of([&] { SweepProfile::tabulated(1.0, zero); }) == ErrorCode::ZeroProfile);
  CHECK(code_of([&] { SweepProfile::tabulated(1.0, single); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("every profile integrates to pi") {
  for (double T : {0.3, 2.0 * pi, 17.0}) {
    for (auto f : {ProfileFamily::Flat, ProfileFamily::Sinusoidal,
                   ProfileFamily::Cosinusoidal}) {
      CHECK(profile_integral(make_profile(f, T)) == Approx(pi).epsilon(1e-9));
    }
  }
  std::mt19937_64 rng(testing::kProfileSeed);
  const auto config = TrapConfig::natural();
  for (int i = 0; i < 200; ++i) {
    const auto p = testing::random_profile(rng, config);
    CHECK(profile_integral(p) == Approx(pi).epsilon(1e-9));
    for (int k = 0; k <= 50; ++k) CHECK(p(p.duration() * k / 50.0) >= 0.0);
  }
}

TEST_CASE("drive amplitude") {
  const auto c = TrapConfig::natural(0.1);
  const auto p = SweepProfile::flat(2.0 * pi);
  CHECK(lambda_drive(c, p, Branch::Up, 1.0) == Approx(std::sqrt(0.5) * 0.6));
  CHECK(lambda_drive(c, p, Branch::Down, 1.0) == Approx(std::sqrt(0.5) * -0.4));

  const auto still = TrapConfig::natural(0.0);
  const auto s = SweepProfile::sinusoidal(3.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> t(0.0, 3.0);
  for (int i = 0; i < 50; ++i) {
    const double x = t(rng);
    CHECK(lambda_drive(still, s, Branch::Up, x) ==
          Approx(-lambda_drive(still, s, Branch::Down, x)));
    // lambda_0 - lambda_1 = 2 sqrt(m hbar omega_0 / 2) r omega_P
    CHECK(lambda_drive(c, s, Branch::Up, x) - lambda_drive(c, s, Branch::Down, x) ==
          Approx(2.0 * c.drive_scale() * s(x)));
  }
}

TEST_CASE("branch helpers") {
  CHECK(index(Branch::Up) == 0);
  CHECK(index(Branch::Down) == 1);
  CHECK(sweep_sign(Branch::Down) == -1.0);
  CHECK(other(Branch::Up) == Branch::Down);
}
