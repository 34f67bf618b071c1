// Command-line front end. Talks to the solver only through the C API.
#include <hvbk/hvbk.h>

#include <cstdio>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

struct Globals {
  long long seed = -1;  // -1: keep the config's init.seed
  int threads = 1;
  bool quiet = false;
};

// Exit codes: 0 success, 1 a check reported failure, 2 error.
struct Failure {
  hvbk_status status;
};

void check(hvbk_status s) {
  if (s != HVBK_OK) throw Failure{s};
}

using ConfigPtr = std::unique_ptr<hvbk_config, decltype(&hvbk_config_free)>;
using StatePtr = std::unique_ptr<hvbk_state, decltype(&hvbk_state_free)>;

ConfigPtr load(const std::string& path, const Globals& g, const std::vector<std::string>& sets) {
  hvbk_config* c = nullptr;
  check(path.empty() ? hvbk_config_default(&c) : hvbk_config_load(path.c_str(), &c));
  ConfigPtr cfg(c, hvbk_config_free);
  for (const std::string& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--set", "expected key=value, got '" + kv + "'");
    check(hvbk_config_set(cfg.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
  }
  if (g.seed >= 0) check(hvbk_config_set(cfg.get(), "init.seed", std::to_string(g.seed).c_str()));
  return cfg;
}

StatePtr state_from(const hvbk_config* cfg) {
  hvbk_state* s = nullptr;
  check(hvbk_state_from_config(cfg, &s));
  return StatePtr(s, hvbk_state_free);
}

StatePtr state_load(const std::string& path) {
  hvbk_state* s = nullptr;
  check(hvbk_state_load(path.c_str(), &s));
  return StatePtr(s, hvbk_state_free);
}

void echo(const hvbk_config* cfg) {
  size_t need = 0;
  check(hvbk_config_echo(cfg, nullptr, 0, &need));
  std::string text(need, '\0');
  check(hvbk_config_echo(cfg, text.data(), text.size(), &need));
  std::fputs(text.c_str(), stdout);
}

int cmd_run(const Globals& g, const std::string& path, const std::vector<std::string>& sets,
            const std::string& from) {
  ConfigPtr cfg = load(path, g, sets);
  if (!g.quiet) echo(cfg.get());
  StatePtr initial(nullptr, hvbk_state_free);
  if (!from.empty()) initial = state_load(from);
  hvbk_run_report r{};
  const hvbk_status s = hvbk_run(cfg.get(), initial.get(), &r, nullptr);
  if (s == HVBK_ERR_BLOWUP) {
    std::fprintf(stderr, "hvbk: %s (last valid t = %.17g)\n", hvbk_last_error(), r.blowup_time);
    return 2;
  }
  check(s);
  std::printf("steps %ld  records %ld  checkpoints %d  t %.6g  wall %.3f s\n", r.steps, r.records,
              r.checkpoints, r.t_final, r.wall_seconds);
  std::printf("max residual: energy %.3e  enstrophy %.3e  max dE/step %.3e  bkm integral %.6g\n",
              r.max_residual_energy, r.max_residual_enstrophy, r.max_energy_increase, r.bkm_integral);
  return 0;
}

int cmd_picard(const Globals& g, const std::string& path, const std::vector<std::string>& sets) {
  ConfigPtr cfg = load(path, g, sets);
  if (!g.quiet) echo(cfg.get());
  StatePtr data = state_from(cfg.get());
  size_t count = 0;
  check(hvbk_picard(cfg.get(), data.get(), nullptr, 0, &count, nullptr));
  std::vector<hvbk_picard_point> pts(count);
  double slope = 0.0;
  check(hvbk_picard(cfg.get(), data.get(), pts.data(), pts.size(), &count, &slope));
  std::printf("%-14s %-14s %s\n", "horizon", "factor", "converged");
  for (const auto& p : pts) std::printf("%-14.6e %-14.6e %d\n", p.horizon, p.factor, p.converged);
  std::printf("slope %.6f\n", slope);
  return 0;
}

int cmd_probe(const Globals& g, const std::string& path, const std::vector<std::string>& sets) {
  ConfigPtr cfg = load(path, g, sets);
  if (!g.quiet) echo(cfg.get());
  StatePtr data = state_from(cfg.get());
  size_t count = 0;
  check(hvbk_probe_existence(cfg.get(), data.get(), nullptr, 0, &count, nullptr));
  std::vector<hvbk_existence_point> pts(count);
  double exponent = 0.0;
  check(hvbk_probe_existence(cfg.get(), data.get(), pts.data(), pts.size(), &count, &exponent));
  std::printf("%-10s %-14s %-14s %s\n", "scale", "data_norm", "t_star", "capped");
  for (const auto& p : pts) {
    std::printf("%-10g %-14.6e %-14.6e %d\n", p.scale, p.data_norm, p.t_star, p.capped);
  }
  std::printf("exponent %.6f\n", exponent);
  return 0;
}

int cmd_energy_bound(const Globals& g, const std::string& source, int n, int fluid, double tol,
                     const std::vector<std::string>& sets) {
  StatePtr state(nullptr, hvbk_state_free);
  if (std::filesystem::is_regular_file(source)) {
    state = state_load(source);
  } else {
    ConfigPtr cfg = load("", g, sets);
    check(hvbk_config_set(cfg.get(), "grid.n", std::to_string(n).c_str()));
    check(hvbk_config_set(cfg.get(), "init.kind", source.c_str()));
    state = state_from(cfg.get());
  }
  hvbk_moment_report r{};
  check(hvbk_check_energy_bound(state.get(), fluid, tol, &r));
  if (!g.quiet) {
    std::printf("%-14s %.10e\n", "|w|_2", r.l2_omega);
    std::printf("%-14s %.10e\n", "|x w|_1", r.moment1);
    std::printf("%-14s %.10e\n", "|x w|_1 min", r.moment1_min);
    std::printf("%-14s %.10e\n", "|u|_2", r.l2_u);
    std::printf("%-14s %.10e\n", "bound", r.bound);
    std::printf("%-14s %.10e\n", "bound min", r.bound_min);
    std::printf("%-14s %.10e\n", "cutoff K", r.cutoff_k);
    std::printf("%-14s %.10e  %s\n", "low term", r.low_term, r.low_ok ? "ok" : "VIOLATED");
    std::printf("%-14s %.10e  %s\n", "high term", r.high_term, r.high_ok ? "ok" : "VIOLATED");
    std::printf("%-14s %s (tol %.3g)\n", "satisfied", r.satisfied ? "yes" : "NO", r.tol_domain);
  }
  std::printf("moment,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d,%d,%d\n", r.l2_omega,
              r.moment1, r.moment1_min, r.l2_u, r.bound, r.bound_min, r.cutoff_k, r.low_term,
              r.high_term, r.low_ok, r.high_ok, r.satisfied);
  return r.satisfied ? 0 : 1;
}

int cmd_ic(const Globals& g, const std::string& kind, const std::string& out, int n,
           const std::vector<std::string>& sets) {
  ConfigPtr cfg = load("", g, sets);
  check(hvbk_config_set(cfg.get(), "grid.n", std::to_string(n).c_str()));
  check(hvbk_config_set(cfg.get(), "init.kind", kind.c_str()));
  StatePtr s = state_from(cfg.get());
  check(hvbk_state_save(s.get(), out.c_str(), 0));
  if (!g.quiet) std::printf("wrote %s (%s, n = %d)\n", out.c_str(), kind.c_str(), n);
  return 0;
}

int cmd_diag(const Globals& g, const std::string& path, double m) {
  StatePtr s = state_load(path);
  hvbk_state_info info{};
  check(hvbk_state_info_get(s.get(), &info));
  hvbk_diagnostics d{};
  check(hvbk_state_diagnostics(s.get(), m, &d));
  if (!g.quiet) {
    std::printf("n %d  L %.17g  t %.17g  rho %g/%g  nu %g/%g  B %g  B' %g  pressure %s\n", info.n,
                info.length, info.t, info.rho_n, info.rho_s, info.nu_n, info.nu_s, info.b, info.b_prime,
                info.has_pressure ? "yes" : "no");
  }
  const std::pair<const char*, double> rows[] = {
      {"energy", d.energy},
      {"diss_n", d.diss_n},
      {"diss_s", d.diss_s},
      {"fric_diss", d.fric_diss},
      {"enstrophy", d.enstrophy},
      {"palinstrophy_n", d.palinstrophy_n},
      {"palinstrophy_s", d.palinstrophy_s},
      {"enstrophy_rhs", d.enstrophy_rhs},
      {"fric_enstrophy", d.fric_enstrophy},
      {"bkm_integrand", d.bkm_integrand},
      {"hm_n", d.hm_n},
      {"hm_s", d.hm_s},
      {"linf_wn", d.linf_wn},
      {"linf_ws", d.linf_ws},
      {"linf_du", d.linf_du},
      {"momentum_x", d.momentum_x},
      {"momentum_y", d.momentum_y},
      {"energy_balance", d.energy_residual_instant},
      {"enstrophy_balance", d.enstrophy_residual_instant},
      {"pressure_rhs_n", d.pressure_rhs_n},
      {"pressure_rhs_s", d.pressure_rhs_s},
      {"momentum_residual", d.momentum_residual},
      {"high_band_fraction", d.high_band_fraction},
  };
  for (const auto& [name, v] : rows) std::printf("%-20s %.17g\n", name, v);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-fluid HVBK solver and analysis probes"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Override init.seed")->check(CLI::NonNegativeNumber);
  app.add_option("--threads", g.threads, "FFT threads")->check(CLI::PositiveNumber);
  app.add_flag("--quiet,-q", g.quiet, "Print results only");
  app.set_version_flag("--version", std::string(hvbk_version()));

  std::string config, source, out, kind, from;
  std::vector<std::string> sets;
  int n = 128, fluid = 0;
  double tol = 0.05, m = 3.0;
  const char* set_help = "Override a config key (key=value), repeatable";

  auto* run = app.add_subcommand("run", "Integrate a configured run");
  run->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  run->add_option("--set", sets, set_help);
  run->add_option("--from", from, "Start from this checkpoint instead of init.*")->check(CLI::ExistingFile);

  auto* picard = app.add_subcommand("picard", "Contraction factor against horizon");
  picard->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  picard->add_option("--set", sets, set_help);

  auto* probe = app.add_subcommand("probe-existence", "Existence time against data size");
  probe->add_option("config", config, "Config file")->required()->check(CLI::ExistingFile);
  probe->add_option("--set", sets, set_help);

  auto* bound = app.add_subcommand("check-energy-bound", "Energy bound from vorticity moments");
  bound->add_option("source", source, "Checkpoint file or initial-condition kind")->required();
  bound->add_option("--n", n, "Grid size for a named initial condition")->check(CLI::PositiveNumber);
  bound->add_option("--fluid", fluid, "0 = normal, 1 = super")->check(CLI::Range(0, 1));
  bound->add_option("--tol", tol, "Domain tolerance")->check(CLI::NonNegativeNumber);
  bound->add_option("--set", sets, set_help);

  auto* ic = app.add_subcommand("ic", "Write an initial condition checkpoint");
  ic->add_option("kind", kind, "taylor_green | random_band | gaussian_dipole | counterflow")->required();
  ic->add_option("out", out, "Output checkpoint")->required();
  ic->add_option("--n", n, "Grid size")->check(CLI::PositiveNumber);
  ic->add_option("--set", sets, set_help);

  auto* diag = app.add_subcommand("diag", "Diagnostics of a checkpoint");
  diag->add_option("checkpoint", source, "Checkpoint file")->required()->check(CLI::ExistingFile);
  diag->add_option("--m", m, "Sobolev index")->check(CLI::NonNegativeNumber);

  CLI11_PARSE(app, argc, argv);
  hvbk_set_threads(g.threads);

  try {
    if (run->parsed()) return cmd_run(g, config, sets, from);
    if (picard->parsed()) return cmd_picard(g, config, sets);
    if (probe->parsed()) return cmd_probe(g, config, sets);
    if (bound->parsed()) return cmd_energy_bound(g, source, n, fluid, tol, sets);
    if (ic->parsed()) return cmd_ic(g, kind, out, n, sets);
    if (diag->parsed()) return cmd_diag(g, source, m);
  } catch (const Failure& f) {
    std::fprintf(stderr, "hvbk: %s\n", hvbk_last_error());
    return 2;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  }
  return 2;
}
