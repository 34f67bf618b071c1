#include "io/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>

namespace hvbk {

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& why) {
  throw Error(ErrorCode::config, key + ": " + why);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end || !std::isfinite(out)) fail(key, "expected a number, got '" + v + "'");
  return out;
}

template <typename Int>
Int to_int(const std::string& key, const std::string& v) {
  Int out = 0;
  const char* end = v.data() + v.size();
  auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) fail(key, "expected an integer, got '" + v + "'");
  return out;
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  if (out.empty()) fail(key, "expected a comma-separated list");
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  (void)ec;
  return std::string(buf, p);
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + fmt(v[i]);
  return out;
}

struct Key {
  const char* name;
  bool required;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

#define HVBK_REAL(NAME, REQ, FIELD)                                                         \
  Key {                                                                                     \
    NAME, REQ, [](RunConfig& c, const std::string& k, const std::string& v) {               \
      c.FIELD = to_double(k, v);                                                            \
    },                                                                                      \
        [](const RunConfig& c) { return fmt(c.FIELD); }                                     \
  }
#define HVBK_INT(NAME, REQ, FIELD, TYPE)                                                    \
  Key {                                                                                     \
    NAME, REQ, [](RunConfig& c, const std::string& k, const std::string& v) {               \
      c.FIELD = to_int<TYPE>(k, v);                                                         \
    },                                                                                      \
        [](const RunConfig& c) { return std::to_string(c.FIELD); }                          \
  }
#define HVBK_WORD(NAME, FIELD)                                                              \
  Key {                                                                                     \
    NAME, false, [](RunConfig& c, const std::string&, const std::string& v) { c.FIELD = v; }, \
        [](const RunConfig& c) { return c.FIELD; }                                          \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table = {
      HVBK_INT("grid.n", true, n, int),
      HVBK_REAL("grid.length", false, length),
      HVBK_REAL("fluid.rho_n", true, phys.rho_n),
      HVBK_REAL("fluid.rho_s", true, phys.rho_s),
      HVBK_REAL("fluid.nu_n", true, phys.nu_n),
      HVBK_REAL("fluid.nu_s", true, phys.nu_s),
      HVBK_REAL("friction.b", false, phys.b),
      HVBK_REAL("friction.b_prime", false, phys.b_prime),
      HVBK_REAL("friction.abs_smoothing_eps", false, phys.abs_smoothing_eps),
      HVBK_REAL("time.dt", false, time.dt),
      HVBK_REAL("time.cfl", false, time.cfl),
      HVBK_REAL("time.t_end", true, time.t_end),
      HVBK_INT("time.output_every", false, time.output_every, int),
      HVBK_REAL("time.checkpoint_every", false, time.checkpoint_every),
      HVBK_WORD("init.kind", init.kind),
      HVBK_REAL("init.amplitude", false, init.amplitude),
      HVBK_INT("init.seed", false, init.seed, std::uint64_t),
      HVBK_REAL("init.k_max", false, init.k_max),
      HVBK_REAL("init.slope", false, init.slope),
      HVBK_REAL("init.sigma", false, init.sigma),
      HVBK_WORD("init.fluids", init.fluids),
      HVBK_REAL("sobolev_m", false, sobolev_m),
      HVBK_WORD("output.diag_path", diag_path),
      HVBK_WORD("output.checkpoint_dir", checkpoint_dir),
      HVBK_REAL("picard.horizon", false, picard.horizon),
      HVBK_INT("picard.max_iters", false, picard.max_iters, int),
      HVBK_REAL("picard.tol", false, picard.tol),
      HVBK_INT("picard.quadrature_steps", false, picard.quadrature_steps, int),
      HVBK_INT("picard.bisection_rounds", false, picard.bisection_rounds, int),
      HVBK_REAL("picard.scan_min", false, probe.scan_min),
      HVBK_REAL("picard.scan_max", false, probe.scan_max),
      HVBK_INT("picard.scan_points", false, probe.scan_points, int),
      Key{"picard.scales", false,
          [](RunConfig& c, const std::string& k, const std::string& v) { c.probe.scales = to_list(k, v); },
          [](const RunConfig& c) { return fmt_list(c.probe.scales); }},
  };
  return table;
}

#undef HVBK_REAL
#undef HVBK_INT
#undef HVBK_WORD

const Key* find_key(const std::string& name) {
  for (const Key& k : keys()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

RunConfig base_defaults() {
  RunConfig c;
  c.length = 2 * std::numbers::pi;
  c.time.cfl = 0.5;
  c.time.output_every = 10;
  return c;
}

}  // namespace

const std::vector<std::string>& registered_init_kinds() {
  static const std::vector<std::string> kinds = {"taylor_green", "random_band", "gaussian_dipole",
                                                 "counterflow"};
  return kinds;
}

void set_config_value(RunConfig& cfg, const std::string& key, const std::string& value) {
  const Key* k = find_key(key);
  if (!k) fail(key, "unknown key");
  k->set(cfg, key, trim(value));
}

void validate_config(const RunConfig& cfg) {
  if (cfg.n < 8 || cfg.n % 2 != 0) fail("grid.n", "must be even and >= 8");
  if (!(cfg.length > 0.0)) fail("grid.length", "must be positive");
  try {
    cfg.phys.validate();
    cfg.time.validate();
    cfg.picard.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::config, e.what());
  }
  if (!(cfg.sobolev_m > 2.0)) fail("sobolev_m", "must exceed 2");
  const auto& kinds = registered_init_kinds();
  if (std::find(kinds.begin(), kinds.end(), cfg.init.kind) == kinds.end()) {
    std::string list;
    for (const auto& k : kinds) list += (list.empty() ? "" : ", ") + k;
    fail("init.kind", "unknown kind '" + cfg.init.kind + "'; registered kinds: " + list);
  }
  if (cfg.init.fluids != "both" && cfg.init.fluids != "normal" && cfg.init.fluids != "super") {
    fail("init.fluids", "must be one of both, normal, super");
  }
  if (!(cfg.init.k_max >= 1.0)) fail("init.k_max", "must be >= 1");
  if (cfg.init.sigma < 0.0) fail("init.sigma", "must be non-negative");
  if (!(cfg.probe.scan_min > 0.0) || !(cfg.probe.scan_max > cfg.probe.scan_min)) {
    fail("picard.scan_min", "need 0 < picard.scan_min < picard.scan_max");
  }
  if (cfg.probe.scan_points < 2) fail("picard.scan_points", "must be >= 2");
  if (cfg.probe.scales.size() < 2) fail("picard.scales", "need at least two amplitudes");
  for (double s : cfg.probe.scales) {
    if (!(s > 0.0)) fail("picard.scales", "amplitudes must be positive");
  }
}

RunConfig default_config() {
  RunConfig c = base_defaults();
  c.n = 32;
  c.time.t_end = 0.0;
  return c;
}

RunConfig parse_config(const std::string& text, const std::string& source) {
  RunConfig cfg = base_defaults();
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(lineno);
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(ErrorCode::config, where + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::config, where + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    if (!section.empty()) key = section + "." + key;
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) fail(key, "duplicate key (" + where + ")");
    if (value.empty()) fail(key, "missing value (" + where + ")");
    set_config_value(cfg, key, value);
  }
  for (const Key& k : keys()) {
    if (k.required && !seen.count(k.name)) fail(k.name, "required key is missing");
  }
  validate_config(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::io, "cannot open config file " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

std::string echo_config(const RunConfig& cfg) {
  std::string out;
  for (const Key& k : keys()) {
    const std::string v = k.get(cfg);
    // Empty paths are left out; an absent key means "off".
    if (v.empty()) continue;
    out += std::string(k.name) + " = " + v + "\n";
  }
  return out;
}

}  // namespace hvbk
