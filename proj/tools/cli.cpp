#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "sagnac/design.hpp"
#include "sagnac/error.hpp"
#include "sagnac/evolution.hpp"
#include "sagnac/fock_oracle.hpp"
#include "sagnac/geometry.hpp"
#include "sagnac/interferometer.hpp"
#include "sagnac/sensitivity.hpp"
#include "sagnac/spectrum.hpp"

namespace sagnac::cli {

namespace {

using json = nlohmann::ordered_json;
using std::numbers::pi;

constexpr int kCsvVersion = 1;

[[noreturn]] void config_error(const std::string& message) {
  throw Error(ErrorCode::InvalidParameter, message);
}

// ---------------------------------------------------------------------------
// Output

using Cell = std::variant<double, std::string>;

struct Table {
  std::string kind;
  std::vector<std::string> headers;
  std::vector<std::vector<Cell>> rows;
};

std::string format_number(double v, int digits) {
  char buf[40];
  if (v == 0.0) v = 0.0;  // no "-0" in tables
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string format_cell(const Cell& c, int digits) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d, digits);
  return std::get<std::string>(c);
}

void write_csv(const Table& t, std::ostream& out) {
  out << "# sagnac " << t.kind << " v" << kCsvVersion << "\n";
  for (std::size_t i = 0; i < t.headers.size(); ++i) {
    out << (i ? "," : "") << t.headers[i];
  }
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_cell(row[i], 17);
    }
    out << "\n";
  }
}

void write_text_table(const Table& t, std::ostream& out) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(t.headers.size());
  for (std::size_t i = 0; i < t.headers.size(); ++i) width[i] = t.headers[i].size();
  for (const auto& row : t.rows) {
    auto& line = cells.emplace_back();
    for (std::size_t i = 0; i < row.size(); ++i) {
      line.push_back(format_cell(row[i], 10));
      width[i] = std::max(width[i], line.back().size());
    }
  }
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      out << (i ? "  " : "");
      out << std::string(width[i] - line[i].size(), ' ') << line[i];
    }
    out << "\n";
  };
  emit(t.headers);
  for (const auto& line : cells) emit(line);
}

void write_text_json(const json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      write_text_json(value, prefix.empty() ? key : prefix + "." + key, out);
    }
  } else if (j.is_array() && !j.empty() && j.front().is_structured()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      write_text_json(j[i], prefix + "[" + std::to_string(i) + "]", out);
    }
  } else {
    out << prefix << ": ";
    if (j.is_number_float()) {
      out << format_number(j.get<double>(), 10);
    } else if (j.is_null()) {
      out << "n/a";
    } else if (j.is_string()) {
      out << j.get<std::string>();
    } else {
      out << j.dump();
    }
    out << "\n";
  }
}

struct Output {
  std::variant<json, Table> body;
  bool verify_failed = false;
};

void render(const Output& o, Format format, std::ostream& out) {
  if (const auto* t = std::get_if<Table>(&o.body)) {
    format == Format::Machine ? write_csv(*t, out) : write_text_table(*t, out);
  } else {
    const auto& j = std::get<json>(o.body);
    if (format == Format::Machine) {
      out << j.dump(2) << "\n";
    } else {
      write_text_json(j, "", out);
    }
  }
}

// ---------------------------------------------------------------------------
// JSON records

json complex_json(std::complex<double> z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json optional_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json trap_json(const TrapConfig& c) {
  return {{"mass", c.mass},
          {"hbar", c.hbar},
          {"trap_frequency", c.trap_frequency},
          {"radius", c.radius},
          {"rotation", c.rotation}};
}

json inputs_json(const RunConfig& cfg) {
  json profile = {{"family", std::string(to_string(cfg.family))},
                  {"duration", cfg.resolved_duration()}};
  if (cfg.family == ProfileFamily::Tabulated) profile["samples"] = cfg.samples;
  return {{"trap", trap_json(cfg.trap)}, {"profile", profile}};
}

json decomposition_json(const PhaseDecomposition& d) {
  return {{"interferometer_phase", d.interferometer_phase},
          {"sagnac_phase", d.sagnac_phase},
          {"spectrum_at_trap", complex_json(d.spectrum_at_trap)},
          {"xi", d.xi},
          {"xi0", d.xi0},
          {"delta_dynamic", d.delta_dynamic},
          {"delta_geometric", d.delta_geometric},
          {"delta_geometric_path", d.delta_geometric_path},
          {"branch_dynamic", d.branch_dynamic},
          {"branch_geometric", d.branch_geometric},
          {"residual_angle", d.residual_angle},
          {"area_measure", d.area_measure()},
          {"kappa", optional_json(d.kappa)},
          {"phase_class", std::string(to_string(d.phase_class))}};
}

json simulate_record(const RunConfig& cfg) {
  const auto r = readout(cfg.trap, cfg.profile());
  return {{"inputs", inputs_json(cfg)},
          {"result",
           {{"delta_alpha", complex_json(r.delta_alpha)},
            {"coherence", complex_json(r.coherence)},
            {"contrast", r.contrast},
            {"phase", r.phase},
            {"principal_phase", r.principal_phase},
            {"sagnac_phase", r.sagnac_phase},
            {"sigma_z", r.sigma_z},
            {"sigma_y", r.sigma_y}}}};
}

json decompose_record(const RunConfig& cfg) {
  return {{"inputs", inputs_json(cfg)},
          {"decomposition",
           decomposition_json(decompose(cfg.trap, cfg.profile(), cfg.intervals))}};
}

json sensitivity_record(const RunConfig& cfg) {
  const auto s = sensitivity(cfg.trap, cfg.profile());
  return {{"inputs", inputs_json(cfg)},
          {"sensitivity",
           {{"delta_omega", s.delta_omega},
            {"signal_fisher", s.signal_fisher},
            {"phase_slope", s.phase_slope},
            {"contrast", s.contrast},
            {"phase", s.phase},
            {"qfi", optional_json(s.qfi)},
            {"qfi_valid", s.qfi_valid},
            {"saturated", s.saturated},
            {"limit_evaluated", s.limit_evaluated}}}};
}

json design_record(const RunConfig& cfg) {
  SchemeSpec s;
  if (cfg.index) {
    s = design_time(cfg.family, cfg.trap, *cfg.index);
  } else {
    const ProfileShape shape{cfg.family, cfg.samples};
    const double T = find_zero_time(shape, cfg.trap, *cfg.bracket_lo, *cfg.bracket_hi);
    s = verify_scheme(cfg.trap, shape.at(T));
  }
  const auto index = s.index ? json(*s.index) : json(nullptr);
  return {{"inputs", {{"trap", trap_json(cfg.trap)},
                      {"family", std::string(to_string(cfg.family))}}},
          {"scheme",
           {{"family", std::string(to_string(s.family))},
            {"index", index},
            {"duration", s.duration},
            {"omega0_t", s.config.trap_frequency * s.duration},
            {"spectrum_at_trap", complex_json(s.spectrum_at_trap)},
            {"flags",
             {{"spectrum_zero", s.flags.spectrum_zero},
              {"phase_equality", s.flags.phase_equality},
              {"qcrb_time", s.flags.qcrb_time},
              {"all", s.flags.all()}}},
            {"decomposition", decomposition_json(s.decomposition)}}}};
}

// ---------------------------------------------------------------------------
// Tables

std::complex<double> spectrum_value(const SweepProfile& p, double omega) {
  if (p.family() == ProfileFamily::Tabulated) return spectrum_numeric(p, omega).value;
  return spectrum_closed_form(p.family(), p.duration(), omega).value;
}

std::vector<double> grid(double lo, double hi, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return g;
}

Table spectrum_table(const RunConfig& cfg) {
  const auto profile = cfg.profile();
  const double unit = cfg.harmonic_axis ? 2.0 * pi / profile.duration() : 1.0;
  Table t{"spectrum", {"omega", "re", "im", "dre_domega"}, {}};
  for (double w : grid(cfg.omega_min * unit, cfg.omega_max * unit, cfg.points)) {
    const auto v = spectrum_value(profile, w);
    t.rows.push_back({w, v.real(), v.imag(), spectrum_derivative(profile, w)});
  }
  return t;
}

Table trajectory_table(const TrapConfig& trap, const SweepProfile& profile,
                       std::size_t intervals, const std::string& kind) {
  const auto up = sample_trajectory(trap, profile, Branch::Up, intervals);
  const auto down = sample_trajectory(trap, profile, Branch::Down, intervals);
  Table t{kind,
          {"t", "re_alpha0", "im_alpha0", "re_alpha1", "im_alpha1", "phi0", "phi1",
           "re_neg_alpha1", "im_neg_alpha1"},
          {}};
  for (std::size_t i = 0; i < up.path.size(); ++i) {
    const auto& a = up.path[i];
    const auto& b = down.path[i];
    t.rows.push_back({a.t, a.alpha.real(), a.alpha.imag(), b.alpha.real(),
                      b.alpha.imag(), a.phase, b.phase, -b.alpha.real(),
                      -b.alpha.imag()});
  }
  return t;
}

Table fig2_table(const RunConfig& cfg) {
  const double T = cfg.trap.period();
  const bool sinusoidal = cfg.panel <= 'c';
  const auto profile = sinusoidal ? SweepProfile::sinusoidal(T) : SweepProfile::flat(T);
  const std::string kind = std::string("fig2-") + cfg.panel;
  switch (cfg.panel) {
    case 'a':
    case 'd': {
      // Profile heights in units of pi^2/(2T) (sinusoidal) or pi/T (flat).
      const double unit = sinusoidal ? pi * pi / (2.0 * T) : pi / T;
      Table t{kind, {"t", "omega_p", "t_scaled", "omega_p_scaled"}, {}};
      for (double s : grid(0.0, T, cfg.points)) {
        t.rows.push_back({s, profile(s), s / T, profile(s) / unit});
      }
      return t;
    }
    case 'b':
    case 'e': {
      const double unit = 2.0 * pi / T;
      Table t{kind, {"omega", "omega_scaled", "re", "im"}, {}};
      for (double x : grid(cfg.omega_min, cfg.omega_max, cfg.points)) {
        const auto v = spectrum_value(profile, x * unit);
        t.rows.push_back({x * unit, x, v.real(), v.imag()});
      }
      return t;
    }
    default:
      return trajectory_table(cfg.trap, profile, cfg.intervals, kind);
  }
}

Output verify_output(const RunConfig& cfg) {
  std::vector<std::pair<std::string, SweepProfile>> schemes;
  if (cfg.configured_only) {
    schemes.emplace_back("configured", cfg.profile());
  } else {
    const std::pair<ProfileFamily, int> points[] = {
        {ProfileFamily::Flat, 1},         {ProfileFamily::Flat, 2},
        {ProfileFamily::Flat, 3},         {ProfileFamily::Sinusoidal, 0},
        {ProfileFamily::Cosinusoidal, 2}, {ProfileFamily::Cosinusoidal, 3},
        {ProfileFamily::Cosinusoidal, 4}};
    for (auto [family, index] : points) {
      const auto scheme = design_time(family, cfg.trap, index);
      schemes.emplace_back(std::string(to_string(family)) + "-" + std::to_string(index),
                           make_profile(family, scheme.duration));
    }
  }
  FockOptions options;
  options.n_max = cfg.n_max;
  options.steps = cfg.steps;
  Output o;
  Table t{"verify",
          {"scheme", "contrast_closed", "contrast_fock", "arg_closed", "arg_fock",
           "discrepancy", "status"},
          {}};
  for (const auto& [name, profile] : schemes) {
    const auto row = compare_with_oracle(name, cfg.trap, profile, options, cfg.tolerance);
    t.rows.push_back({row.scheme, row.contrast_closed, row.contrast_fock,
                      row.phase_closed, row.phase_fock, row.discrepancy,
                      std::string(row.pass ? "PASS" : "FAIL")});
    o.verify_failed = o.verify_failed || !row.pass;
  }
  o.body = std::move(t);
  return o;
}

// ---------------------------------------------------------------------------
// Sweeps

void set_field(RunConfig& cfg, const std::string& key, double value) {
  if (key == "mass") cfg.trap.mass = value;
  else if (key == "hbar") cfg.trap.hbar = value;
  else if (key == "trap_frequency") cfg.trap.trap_frequency = value;
  else if (key == "radius") cfg.trap.radius = value;
  else if (key == "rotation") cfg.trap.rotation = value;
  else if (key == "duration") cfg.duration = value;
  else config_error("unknown sweep key '" + key + "'");
}

// Points are independent; workers pull indices and results are stored by
// index, so the output order never depends on scheduling.
json run_sweep(const RunConfig& cfg, const std::function<json(const RunConfig&)>& record) {
  const Sweep& sweep = *cfg.sweep;
  std::vector<RunConfig> configs(sweep.count, cfg);
  for (std::size_t i = 0; i < sweep.count; ++i) {
    set_field(configs[i], sweep.key, sweep.value(i));
    configs[i].trap.validate();
    configs[i].profile();
  }
  std::vector<json> results(sweep.count);
  std::vector<std::exception_ptr> errors(sweep.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < sweep.count;) {
      try {
        results[i] = record(configs[i]);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::min<std::size_t>(
      sweep.count, std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  json rows = json::array();
  for (std::size_t i = 0; i < sweep.count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    rows.push_back({{"index", i}, {sweep.key, sweep.value(i)}, {"record", results[i]}});
  }
  return {{"sweep", {{"key", sweep.key}, {"start", sweep.start}, {"stop", sweep.stop},
                     {"count", sweep.count}}},
          {"points", rows}};
}

// ---------------------------------------------------------------------------
// Configuration

template <class T>
T read_value(const json& j, const std::string& where) {
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!j.is_number()) config_error(where + " must be a number");
    } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      if (!j.is_number_integer()) config_error(where + " must be an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (j.get<long long>() < 0) config_error(where + " must be non-negative");
      }
    }
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    config_error(where + " has the wrong type");
  }
}

using Handler = std::function<void(const json&, const std::string&)>;

void read_object(const json& j, const std::string& where,
                 const std::vector<std::pair<std::string, Handler>>& fields) {
  if (!j.is_object()) config_error(where + " must be an object");
  for (const auto& [key, value] : j.items()) {
    const auto it = std::find_if(fields.begin(), fields.end(),
                                 [&](const auto& f) { return f.first == key; });
    const std::string path = where.empty() ? key : where + "." + key;
    if (it == fields.end()) config_error("unknown config key '" + path + "'");
    it->second(value, path);
  }
}

template <class T>
Handler into(T& target) {
  return [&target](const json& j, const std::string& where) {
    target = read_value<T>(j, where);
  };
}

template <class T>
Handler into(std::optional<T>& target) {
  return [&target](const json& j, const std::string& where) {
    target = read_value<T>(j, where);
  };
}

Format parse_format(const std::string& s) {
  if (s == "machine") return Format::Machine;
  if (s == "text") return Format::Text;
  config_error("format must be 'machine' or 'text', got '" + s + "'");
}

bool parse_axis(const std::string& s) {
  if (s == "omega") return false;
  if (s == "harmonic") return true;
  config_error("axis must be 'omega' or 'harmonic', got '" + s + "'");
}

char parse_panel(const std::string& s) {
  if (s.size() != 1 || s[0] < 'a' || s[0] > 'f') {
    config_error("panel must be one of a-f, got '" + s + "'");
  }
  return s[0];
}

Handler string_into(std::function<void(const std::string&)> set) {
  return [set](const json& j, const std::string& where) {
    if (!j.is_string()) config_error(where + " must be a string");
    set(j.get<std::string>());
  };
}

// Flags given on the command line; each one overrides the config file.
struct Flags {
  std::string config_path;
  std::optional<std::string> format, output, family, sweep, axis, panel;
  std::optional<double> mass, hbar, trap_frequency, radius, rotation, duration;
  std::vector<double> samples;
  std::optional<double> omega_min, omega_max, tolerance;
  std::optional<std::size_t> points, intervals, n_max, steps;
  std::optional<int> index;
  std::vector<double> bracket;
  bool configured = false;
};

void apply_flags(const Flags& f, RunConfig& cfg) {
  if (f.format) cfg.format = parse_format(*f.format);
  if (f.output) cfg.output = *f.output;
  if (f.family) cfg.family = parse_family(*f.family);
  if (f.sweep) cfg.sweep = parse_sweep(*f.sweep);
  if (f.axis) cfg.harmonic_axis = parse_axis(*f.axis);
  if (f.panel) cfg.panel = parse_panel(*f.panel);
  if (f.mass) cfg.trap.mass = *f.mass;
  if (f.hbar) cfg.trap.hbar = *f.hbar;
  if (f.trap_frequency) cfg.trap.trap_frequency = *f.trap_frequency;
  if (f.radius) cfg.trap.radius = *f.radius;
  if (f.rotation) cfg.trap.rotation = *f.rotation;
  if (f.duration) cfg.duration = *f.duration;
  if (!f.samples.empty()) cfg.samples = f.samples;
  if (f.omega_min) cfg.omega_min = *f.omega_min;
  if (f.omega_max) cfg.omega_max = *f.omega_max;
  if (f.tolerance) cfg.tolerance = *f.tolerance;
  if (f.points) cfg.points = *f.points;
  if (f.intervals) cfg.intervals = *f.intervals;
  if (f.n_max) cfg.n_max = *f.n_max;
  if (f.steps) cfg.steps = *f.steps;
  if (f.index) {
    cfg.index = *f.index;
    cfg.bracket_lo.reset();
    cfg.bracket_hi.reset();
  }
  if (!f.bracket.empty()) {
    cfg.bracket_lo = f.bracket[0];
    cfg.bracket_hi = f.bracket[1];
    cfg.index.reset();
  }
  if (f.configured) cfg.configured_only = true;
}

void validate(const RunConfig& cfg, const std::string& command) {
  cfg.trap.validate();
  cfg.profile();
  if (cfg.points < 1) config_error("points must be at least 1");
  if (!(std::isfinite(cfg.omega_min) && std::isfinite(cfg.omega_max)) ||
      cfg.omega_max < cfg.omega_min) {
    config_error("frequency range must be finite with omega_min <= omega_max");
  }
  if (cfg.intervals < kMinTrajectorySamples) {
    config_error("intervals must be at least " + std::to_string(kMinTrajectorySamples));
  }
  if (!(cfg.tolerance > 0.0)) config_error("tolerance must be positive");
  if (command == "design") {
    const bool bracket = cfg.bracket_lo && cfg.bracket_hi;
    if (!cfg.index && !bracket) config_error("design needs --index or --bracket");
  }
  if (cfg.sweep) {
    static const std::vector<std::string> sweepable = {"simulate", "decompose",
                                                       "sensitivity", "design"};
    if (std::find(sweepable.begin(), sweepable.end(), command) == sweepable.end()) {
      config_error("--sweep is not available for '" + command + "'");
    }
  }
}

Output dispatch(const RunConfig& cfg, const std::string& command) {
  const std::pair<const char*, json (*)(const RunConfig&)> records[] = {
      {"simulate", simulate_record},
      {"decompose", decompose_record},
      {"sensitivity", sensitivity_record},
      {"design", design_record}};
  for (const auto& [name, record] : records) {
    if (command == name) {
      return {cfg.sweep ? run_sweep(cfg, record) : record(cfg)};
    }
  }
  if (command == "spectrum") return {spectrum_table(cfg)};
  if (command == "trajectory") {
    return {trajectory_table(cfg.trap, cfg.profile(), cfg.intervals, "trajectory")};
  }
  if (command == "fig2") return {fig2_table(cfg)};
  return verify_output(cfg);
}

void add_common(CLI::App& sub, Flags& f) {
  sub.add_option("-c,--config", f.config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  sub.add_option("--format", f.format, "machine (JSON/CSV) or text");
  sub.add_option("-o,--output", f.output, "write to this file instead of stdout");
  sub.add_option("--mass", f.mass);
  sub.add_option("--hbar", f.hbar);
  sub.add_option("--trap-frequency,--omega0", f.trap_frequency);
  sub.add_option("--radius", f.radius);
  sub.add_option("--rotation", f.rotation, "rotation frequency Omega");
  sub.add_option("--family", f.family, "flat, sinusoidal, cosinusoidal or tabulated");
  sub.add_option("--duration", f.duration, "interrogation time T");
  sub.add_option("--samples", f.samples, "tabulated profile samples")->delimiter(',');
}

}  // namespace

double Sweep::value(std::size_t i) const {
  if (count == 1) return start;
  return start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
}

SweepProfile RunConfig::profile() const {
  return make_profile(family, resolved_duration(), samples);
}

Sweep parse_sweep(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) config_error("sweep must look like key=start:stop:n");
  Sweep s;
  s.key = text.substr(0, eq);
  RunConfig probe;
  set_field(probe, s.key, 1.0);
  std::istringstream in(text.substr(eq + 1));
  char c1 = 0, c2 = 0;
  long long n = 0;
  if (!(in >> s.start >> c1 >> s.stop >> c2 >> n) || c1 != ':' || c2 != ':' ||
      !(in >> std::ws).eof()) {
    config_error("sweep must look like key=start:stop:n, got '" + text + "'");
  }
  if (n < 1) config_error("sweep point count must be at least 1");
  if (!std::isfinite(s.start) || !std::isfinite(s.stop)) config_error("sweep bounds must be finite");
  s.count = static_cast<std::size_t>(n);
  return s;
}

void apply_config_json(const std::string& text, RunConfig& cfg) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  auto& t = cfg.trap;
  read_object(doc, "", {
      {"trap", [&](const json& j, const std::string& w) {
         read_object(j, w, {{"mass", into(t.mass)},
                            {"hbar", into(t.hbar)},
                            {"trap_frequency", into(t.trap_frequency)},
                            {"radius", into(t.radius)},
                            {"rotation", into(t.rotation)}});
       }},
      {"profile", [&](const json& j, const std::string& w) {
         read_object(j, w, {{"family", string_into([&](const std::string& s) {
                               cfg.family = parse_family(s);
                             })},
                            {"duration", into(cfg.duration)},
                            {"samples", [&](const json& a, const std::string& p) {
                               if (!a.is_array()) config_error(p + " must be an array");
                               cfg.samples.clear();
                               for (const auto& v : a) {
                                 cfg.samples.push_back(read_value<double>(v, p));
                               }
                             }}});
       }},
      {"spectrum", [&](const json& j, const std::string& w) {
         read_object(j, w, {{"omega_min", into(cfg.omega_min)},
                            {"omega_max", into(cfg.omega_max)},
                            {"points", into(cfg.points)},
                            {"axis", string_into([&](const std::string& s) {
                               cfg.harmonic_axis = parse_axis(s);
                             })}});
       }},
      {"trajectory", [&](const json& j, const std::string& w) {
         read_object(j, w, {{"intervals", into(cfg.intervals)}});
       }},
      {"design", [&](const json& j, const std::string& w) {
         read_object(j, w, {{"index", into(cfg.index)},
                            {"bracket", [&](const json& a, const std::string& p) {
                               if (!a.is_array() || a.size() != 2) {
                                 config_error(p + " must be [lo, hi]");
                               }
                               cfg.bracket_lo = read_value<double>(a[0], p);
                               cfg.bracket_hi = read_value<double>(a[1], p);
                             }}});
       }},
      {"verify", [&](const json& j, const std::string& w) {
         read_object(j, w, {{"n_max", into(cfg.n_max)},
                            {"steps", into(cfg.steps)},
                            {"tolerance", into(cfg.tolerance)},
                            {"configured_only", into(cfg.configured_only)}});
       }},
      {"fig2", [&](const json& j, const std::string& w) {
         read_object(j, w, {{"panel", string_into([&](const std::string& s) {
                               cfg.panel = parse_panel(s);
                             })}});
       }},
      {"sweep", string_into([&](const std::string& s) { cfg.sweep = parse_sweep(s); })},
      {"format", string_into([&](const std::string& s) { cfg.format = parse_format(s); })},
      {"output", string_into([&](const std::string& s) { cfg.output = s; })},
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ring-trap Sagnac interferometer model"};
  app.name("sagnac");
  app.require_subcommand(1, 1);
  Flags f;

  auto* spectrum = app.add_subcommand("spectrum", "sweep-profile spectrum on a frequency grid (CSV)");
  auto* trajectory = app.add_subcommand("trajectory", "phase-space paths of both branches (CSV)");
  auto* simulate = app.add_subcommand("simulate", "interferometer readout (JSON)");
  auto* decompose_cmd = app.add_subcommand("decompose", "dynamic/geometric phase split (JSON)");
  auto* design = app.add_subcommand("design", "design-point interrogation time (JSON)");
  auto* sensitivity_cmd = app.add_subcommand("sensitivity", "rotation-rate uncertainty (JSON)");
  auto* verify = app.add_subcommand("verify", "closed form against number-state propagation (CSV)");
  auto* fig2 = app.add_subcommand("fig2", "data for the profile/spectrum/path figure panels (CSV)");
  for (auto* sub : app.get_subcommands({})) add_common(*sub, f);

  for (auto* sub : {spectrum, fig2}) {
    sub->add_option("--omega-min", f.omega_min);
    sub->add_option("--omega-max", f.omega_max);
    sub->add_option("--points", f.points, "grid points");
  }
  spectrum->add_option("--axis", f.axis, "omega, or harmonic for units of 2 pi / T");
  for (auto* sub : {trajectory, decompose_cmd, fig2}) {
    sub->add_option("--intervals", f.intervals, "trajectory grid intervals");
  }
  for (auto* sub : {simulate, decompose_cmd, design, sensitivity_cmd}) {
    sub->add_option("--sweep", f.sweep, "key=start:stop:n");
  }
  auto* index_opt = design->add_option("--index", f.index, "K, L or M");
  design->add_option("--bracket", f.bracket, "search T in [lo, hi]")
      ->expected(2)
      ->excludes(index_opt);
  verify->add_option("--n-max", f.n_max, "number-state truncation");
  verify->add_option("--steps", f.steps, "time steps");
  verify->add_option("--tolerance", f.tolerance, "allowed discrepancy");
  verify->add_flag("--configured", f.configured, "check only the configured profile");
  fig2->add_option("--panel", f.panel, "a-f");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands()[0]->help());
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands()[0]->help());
    return kConfigError;
  }

  const std::string command = app.get_subcommands()[0]->get_name();
  try {
    RunConfig cfg;
    if (!f.config_path.empty()) {
      std::ifstream in(f.config_path);
      std::stringstream buffer;
      buffer << in.rdbuf();
      if (!in) config_error("cannot read " + f.config_path);
      apply_config_json(buffer.str(), cfg);
    }
    apply_flags(f, cfg);
    validate(cfg, command);

    const Output o = dispatch(cfg, command);
    if (cfg.output) {
      std::ofstream file(*cfg.output);
      if (!file) config_error("cannot write " + *cfg.output);
      render(o, cfg.format, file);
    } else {
      render(o, cfg.format, out);
    }
    if (o.verify_failed) {
      err << "verification failed\n";
      return kVerifyFailed;
    }
    return kSuccess;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical(e.code()) ? kNumericalError : kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  }
}

}  // namespace sagnac::cli
