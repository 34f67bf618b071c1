#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/picard.hpp"
#include "core/timestepping.hpp"

namespace hvbk {

struct InitSpec {
  std::string kind = "taylor_green";
  double amplitude = 1.0;
  std::uint64_t seed = 0;
  double k_max = 8.0;   // random_band, counterflow: integer-wavenumber radius
  double slope = 1.0;   // random_band, counterflow: coefficients scale as |k|^-slope
  double sigma = 0.0;   // gaussian_dipole width; 0 means L/20
  std::string fluids = "both";  // both | normal | super
};

struct ProbeSpec {
  double scan_min = 1e-3;  // horizons for the contraction-factor scan
  double scan_max = 1e-1;
  int scan_points = 9;
  std::vector<double> scales{1.0, 2.0, 4.0};  // data amplitudes for the existence probe
};

struct RunConfig {
  int n = 0;
  double length = 0.0;
  PhysParams phys;
  IntegratorConfig time;
  InitSpec init;
  double sobolev_m = 3.0;
  std::string diag_path;
  std::string checkpoint_dir;
  PicardConfig picard;
  ProbeSpec probe;
};

// Grammar (one statement per line):
//   # comment            blank lines are ignored
//   [section]            prefixes following keys with "section."
//   key = value          dotted keys; values are numbers, words or
//                        comma-separated number lists
// Required: grid.n, fluid.rho_n, fluid.rho_s, fluid.nu_n, fluid.nu_s,
// time.t_end. Unknown keys, duplicate keys and invariant violations are
// errors naming the key.
RunConfig parse_config(const std::string& text, const std::string& source = "<string>");
RunConfig load_config(const std::string& path);

// Defaults for every key, with the required ones set to a small valid run.
RunConfig default_config();

// Sets one key from its textual value (same rules as the file grammar).
void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value);

// Throws ErrorCode::config naming the first offending key.
void validate_config(const RunConfig& cfg);

// Every effective parameter as "key = value" lines, parseable by parse_config.
std::string echo_config(const RunConfig& cfg);

const std::vector<std::string>& registered_init_kinds();

}  // namespace hvbk
