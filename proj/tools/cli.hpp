#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sagnac/model.hpp"

namespace sagnac::cli {

enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 2,
  kNumericalError = 3,
  kVerifyFailed = 4,
};

enum class Format { Machine, Text };

struct Sweep {
  std::string key;  // a trap field or "duration"
  double start = 0.0;
  double stop = 0.0;
  std::size_t count = 1;

  double value(std::size_t i) const;
};

/// Everything a run needs, after merging the config file and the flags.
struct RunConfig {
  TrapConfig trap = TrapConfig::natural(0.1);
  ProfileFamily family = ProfileFamily::Flat;
  std::optional<double> duration;  // defaults to one trap period
  std::vector<double> samples;

  // spectrum
  double omega_min = 0.0;
  double omega_max = 4.0;
  std::size_t points = 401;
  bool harmonic_axis = false;  // omega bounds in units of 2 pi / T

  // trajectory
  std::size_t intervals = 256;

  // design
  std::optional<int> index;
  std::optional<double> bracket_lo;
  std::optional<double> bracket_hi;

  // verify
  std::size_t n_max = 40;
  std::size_t steps = 4096;
  double tolerance = 1e-4;
  bool configured_only = false;

  // fig2
  char panel = 'f';

  std::optional<Sweep> sweep;
  Format format = Format::Machine;
  std::optional<std::string> output;

  double resolved_duration() const {
    return duration.value_or(trap.period());
  }
  SweepProfile profile() const;
};

/// Parses `key=start:stop:n`. Throws sagnac::Error(InvalidParameter).
Sweep parse_sweep(const std::string& text);

/// Applies a JSON config document on top of `config`. Unknown keys and
/// mistyped values throw sagnac::Error(InvalidParameter).
void apply_config_json(const std::string& text, RunConfig& config);

/// Entry point of the `sagnac` tool. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sagnac::cli
