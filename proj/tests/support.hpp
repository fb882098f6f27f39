#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "sagnac/model.hpp"
#include "sagnac/spectrum.hpp"

namespace sagnac::testing {

inline constexpr std::uint64_t kProfileSeed = 20240607;
inline constexpr int kRandomProfiles = 1000;

/// Random admissible tabulated profile: 2 to 24 non-negative samples with at
/// least one positive, T between a quarter and four trap periods.
inline SweepProfile random_profile(std::mt19937_64& rng,
                                   const TrapConfig& config) {
  std::uniform_int_distribution<int> count(2, 24);
  std::uniform_real_distribution<double> value(0.0, 1.0);
  std::uniform_real_distribution<double> periods(0.25, 4.0);
  std::bernoulli_distribution gap(0.2);
  std::vector<double> samples(static_cast<std::size_t>(count(rng)));
  for (auto& s : samples) s = gap(rng) ? 0.0 : value(rng);
  samples[samples.size() / 2] += 0.1;
  return SweepProfile::tabulated(periods(rng) * config.period(), samples);
}

/// Five-point central difference with one Richardson step.
template <class F>
double derivative(F&& f, double x, double h) {
  auto central = [&](double step) {
    return (f(x + step) - f(x - step)) / (2.0 * step);
  };
  return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

}  // namespace sagnac::testing
