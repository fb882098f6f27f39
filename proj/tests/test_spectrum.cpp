#include <doctest.h>

#include <cmath>
#include <random>

#include "sagnac/error.hpp"
#include "sagnac/spectrum.hpp"
#include "support.hpp"

using namespace sagnac;
using doctest::Approx;
using std::numbers::pi;

namespace {

const double kS = std::sqrt(pi / 2.0);
constexpr ProfileFamily kAnalytic[] = {ProfileFamily::Flat, ProfileFamily::Sinusoidal,
                                       ProfileFamily::Cosinusoidal};

double distance(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

}  // namespace

TEST_CASE("value at zero frequency") {
  for (auto f : kAnalytic) {
    const auto p = make_profile(f, 3.7);
    CHECK(distance(spectrum_numeric(p, 0.0).value, kS) < 1e-10);
    CHECK(distance(spectrum_closed_form(f, 3.7, 0.0).value, kS) < 1e-12);
  }
  std::mt19937_64 rng(testing::kProfileSeed);
  for (int i = 0; i < 20; ++i) {
    const auto p = testing::random_profile(rng, TrapConfig::natural());
    CHECK(distance(spectrum_numeric(p, 0.0).value, kS) < 1e-10);
  }
}

TEST_CASE("flat spectrum examples") {
  const auto p = SweepProfile::flat(2.0 * pi);
  CHECK(std::abs(spectrum_numeric(p, 1.0).value) < 1e-10);
  const auto half = spectrum_numeric(p, 0.5);
  CHECK(half.method == SpectrumMethod::Quadrature);
  CHECK(distance(half.value, {0.0, -std::sqrt(2.0 / pi)}) < 1e-10);
  for (int k = 1; k <= 3; ++k) {
    const auto v = spectrum_closed_form(ProfileFamily::Flat, 2.0 * pi * k, 1.0);
    CHECK(v.method == SpectrumMethod::ClosedForm);
    CHECK(std::abs(v.value) < 1e-12);
  }
}

TEST_CASE("removable singular points") {
  const double T = 2.0 * pi;
  // omega T = 2 pi
  const auto cos_limit = spectrum_closed_form(ProfileFamily::Cosinusoidal, T, 1.0).value;
  CHECK(distance(cos_limit, -kS / 2.0) < 1e-12);
  CHECK(distance(cos_limit, spectrum_numeric(SweepProfile::cosinusoidal(T), 1.0).value) < 1e-10);
  const auto sin_zero = spectrum_closed_form(ProfileFamily::Sinusoidal, T, 1.0).value;
  CHECK(std::abs(sin_zero) < 1e-12);
  CHECK(std::abs(spectrum_numeric(SweepProfile::sinusoidal(T), 1.0).value) < 1e-10);

  // Continuity across each guard band edge and the singular point itself.
  for (auto f : kAnalytic) {
    for (double x0 : {0.0, 2.0 * pi, -2.0 * pi}) {
      for (double offset : {1e-4, 1e-6, 1e-9}) {
        for (double sign : {-1.0, 1.0}) {
          const double w = (x0 + sign * offset) / T;
          const auto closed = spectrum_closed_form(f, T, w).value;
          const auto numeric = spectrum_numeric(make_profile(f, T), w).value;
          CHECK(distance(closed, numeric) < 1e-10);
        }
      }
      const double edge = (x0 + 1e-4) / T;
      const double eps = 1e-4 * 1e-9 / T;
      CHECK(distance(spectrum_closed_form(f, T, edge - eps).value,
                     spectrum_closed_form(f, T, edge + eps).value) < 1e-12);
    }
  }
}

TEST_CASE("closed forms match quadrature at random frequencies") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> omega(1e-6, 10.0);
  for (auto f : kAnalytic) {
    for (int i = 0; i < 100; ++i) {
      const double w = omega(rng);
      const double T = 2.0 * pi;
      CHECK(distance(spectrum_closed_form(f, T, w).value,
                     spectrum_numeric(make_profile(f, T), w).value) < 1e-8);
    }
  }
}

TEST_CASE("tabulated family has no closed form") {
  CHECK_THROWS_AS(spectrum_closed_form(ProfileFamily::Tabulated, 1.0, 1.0), Error);
  try {
    spectrum_closed_form(ProfileFamily::Tabulated, 1.0, 1.0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedFamily);
  }
}

TEST_CASE("conjugate symmetry") {
  std::mt19937_64 rng(testing::kProfileSeed + 1);
  std::uniform_real_distribution<double> omega(0.0, 8.0);
  for (int i = 0; i < 100; ++i) {
    const auto p = testing::random_profile(rng, TrapConfig::natural());
    const double w = omega(rng);
    CHECK(distance(std::conj(spectrum_numeric(p, w).value),
                   spectrum_numeric(p, -w).value) < 1e-10);
  }
}

TEST_CASE("real part bound on random profiles") {
  std::mt19937_64 rng(testing::kProfileSeed + 2);
  std::uniform_real_distribution<double> omega(0.0, 10.0);
  for (int i = 0; i < testing::kRandomProfiles; ++i) {
    const auto p = testing::random_profile(rng, TrapConfig::natural());
    CHECK(std::abs(spectrum_numeric(p, omega(rng)).value.real()) <= kS + 1e-12);
  }
}

TEST_CASE("derivative examples") {
  CHECK(spectrum_derivative(SweepProfile::flat(2.0 * pi), 1.0) == Approx(kS).epsilon(1e-10));
  CHECK(spectrum_derivative(SweepProfile::sinusoidal(2.0 * pi), 1.0) ==
        Approx(kS * pi * pi / 8.0).epsilon(1e-10));
  CHECK(spectrum_derivative(SweepProfile::cosinusoidal(4.0 * pi), 1.0) ==
        Approx(-kS / 3.0).epsilon(1e-10));
}

TEST_CASE("derivative matches finite differences") {
  std::mt19937_64 rng(testing::kProfileSeed + 3);
  std::uniform_real_distribution<double> omega(0.05, 10.0);
  for (int i = 0; i < 100; ++i) {
    const auto p = testing::random_profile(rng, TrapConfig::natural());
    const double w = omega(rng);
    auto re = [&](double x) { return spectrum_numeric(p, x).value.real(); };
    CHECK(std::abs(testing::derivative(re, w, 1e-5) - spectrum_derivative(p, w)) < 1e-6);
  }
}
