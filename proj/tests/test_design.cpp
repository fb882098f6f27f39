#include <doctest.h>

#include <cmath>

#include "sagnac/design.hpp"
#include "sagnac/error.hpp"
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

TEST_CASE("whole periods") {
  CHECK(whole_periods(kFig, 2.0 * pi) == 1);
  CHECK(whole_periods(kFig, 6.0 * pi) == 3);
  CHECK_FALSE(whole_periods(kFig, 3.0 * pi).has_value());
  CHECK_FALSE(whole_periods(kFig, 0.5).has_value());
  CHECK_FALSE(whole_periods(kFig, 2.0 * pi * (1.0 + 1e-6)).has_value());
}

TEST_CASE("design rules") {
  const auto flat = design_time(ProfileFamily::Flat, kFig, 1);
  CHECK(flat.duration == Approx(2.0 * pi));
  CHECK(flat.flags.all());
  CHECK(flat.index == 1);

  const auto sinus = design_time(ProfileFamily::Sinusoidal, kFig, 0);
  CHECK(sinus.duration == Approx(2.0 * pi));
  CHECK(sinus.flags.all());
  CHECK(sinus.decomposition.kappa_value() == Approx(8.0 / (pi * pi)));

  auto fast = kFig;
  fast.trap_frequency = 2.0;
  const auto cosine = design_time(ProfileFamily::Cosinusoidal, fast, 3);
  CHECK(cosine.duration == Approx(3.0 * pi));
  CHECK(cosine.flags.all());
}

TEST_CASE("inadmissible indices") {
  CHECK(code_of([] { design_time(ProfileFamily::Flat, kFig, 0); }) == ErrorCode::InvalidIndex);
  CHECK(code_of([] { design_time(ProfileFamily::Sinusoidal, kFig, -1); }) ==
        ErrorCode::InvalidIndex);
  CHECK(code_of([] { design_time(ProfileFamily::Cosinusoidal, kFig, 0); }) ==
        ErrorCode::InvalidIndex);
  CHECK(code_of([] { design_time(ProfileFamily::Tabulated, kFig, 1); }) ==
        ErrorCode::UnsupportedFamily);
  try {
    design_time(ProfileFamily::Cosinusoidal, kFig, 1);
    FAIL("M = 1 must be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidIndex);
    REQUIRE(e.value().has_value());
    CHECK(*e.value() == Approx(-std::sqrt(pi / 2.0) / 2.0).epsilon(1e-10));
  }
}

TEST_CASE("flagged schemes reproduce unit contrast and phase equality") {
  for (auto [family, index] : {std::pair{ProfileFamily::Flat, 2},
                               std::pair{ProfileFamily::Sinusoidal, 0},
                               std::pair{ProfileFamily::Sinusoidal, 1},
                               std::pair{ProfileFamily::Cosinusoidal, 4}}) {
    const auto s = design_time(family, kFig, index);
    REQUIRE(s.flags.all());
    const auto r = readout(kFig, make_profile(family, s.duration));
    CHECK(std::abs(r.contrast - 1.0) < 1e-8);
    CHECK(std::abs(r.phase - r.sagnac_phase) < 1e-8 * std::abs(r.sagnac_phase));
  }
}

TEST_CASE("verification flags are computed, not assumed") {
  const auto s = verify_scheme(kFig, SweepProfile::flat(pi));
  CHECK_FALSE(s.flags.spectrum_zero);
  CHECK(s.flags.phase_equality);  // Re W vanishes at omega T = pi
  CHECK_FALSE(s.flags.qcrb_time);
  CHECK_FALSE(s.flags.all());
}

TEST_CASE("zero search examples") {
  CHECK(find_zero_time({ProfileFamily::Flat, {}}, kFig, 5.0, 8.0) ==
        Approx(2.0 * pi).epsilon(1e-10));
  CHECK(find_zero_time({ProfileFamily::Cosinusoidal, {}}, kFig, 10.0, 15.0) ==
        Approx(4.0 * pi).epsilon(1e-10));
  CHECK(find_zero_time({ProfileFamily::Sinusoidal, {}}, kFig, 3.0, 9.0) ==
        Approx(2.0 * pi).epsilon(1e-10));
}

TEST_CASE("zero search agrees with the design rules") {
  const double period = kFig.period();
  auto agree = [&](ProfileFamily f, int index, double lo, double hi) {
    const double rule = design_time(f, kFig, index).duration;
    CHECK(std::abs(find_zero_time({f, {}}, kFig, lo * period, hi * period) - rule) < 1e-8);
  };
  agree(ProfileFamily::Flat, 1, 0.8, 1.2);
  agree(ProfileFamily::Flat, 3, 2.7, 3.3);
  agree(ProfileFamily::Sinusoidal, 0, 0.8, 1.2);
  agree(ProfileFamily::Cosinusoidal, 2, 1.8, 2.2);
  agree(ProfileFamily::Cosinusoidal, 4, 3.7, 4.3);
}

TEST_CASE("zero search at a higher-order zero") {
  // At omega_0 T = 6 pi the sinusoidal spectrum has a double zero in Re and a
  // triple zero in Im, so |W|^2 ~ (T - T*)^4 and double precision resolves T
  // only to about 1e-7.
  const double rule = design_time(ProfileFamily::Sinusoidal, kFig, 1).duration;
  const double found = find_zero_time({ProfileFamily::Sinusoidal, {}}, kFig,
                                      2.7 * kFig.period(), 3.3 * kFig.period());
  CHECK(std::abs(found - rule) < 1e-6);
}

TEST_CASE("zero search on a tabulated shape") {
  // A symmetric triangle is the self-convolution of a box of width T/2, so
  // its spectrum has a double zero at omega T = 4 pi.
  const ProfileShape triangle{ProfileFamily::Tabulated, {0.0, 1.0, 0.0}};
  const double T = find_zero_time(triangle, kFig, 10.0, 15.0);
  CHECK(T == Approx(4.0 * pi).epsilon(1e-4));
}

TEST_CASE("zero search failures") {
  CHECK(code_of([] { find_zero_time({ProfileFamily::Flat, {}}, kFig, 7.0, 9.0); }) ==
        ErrorCode::NoZeroInBracket);
  CHECK(code_of([] { find_zero_time({ProfileFamily::Flat, {}}, kFig, 3.0, 2.0); }) ==
        ErrorCode::InvalidParameter);
}
