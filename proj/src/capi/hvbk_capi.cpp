#include "hvbk/hvbk.h"

#include <cmath>
#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <stdexcept>
#include <string>

#include "core/diagnostics.hpp"
#include "core/energybound.hpp"
#include "core/pressure.hpp"
#include "core/spectral.hpp"
#include "io/checkpoint.hpp"
#include "io/driver.hpp"

struct hvbk_config {
  hvbk::RunConfig cfg;
};

struct hvbk_state {
  hvbk::TwoFluidState state;
  hvbk::PhysParams params;
  std::optional<hvbk::PressurePair> pressures;
};

namespace {

thread_local std::string last_error;

struct BufferTooSmall : std::runtime_error {
  using std::runtime_error::runtime_error;
};

hvbk_status status_of(hvbk::ErrorCode code) {
  using hvbk::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return HVBK_ERR_INVALID_ARGUMENT;
    case ErrorCode::config: return HVBK_ERR_CONFIG;
    case ErrorCode::io: return HVBK_ERR_IO;
    case ErrorCode::checkpoint_corrupt: return HVBK_ERR_CHECKPOINT_CORRUPT;
    case ErrorCode::checkpoint_truncated: return HVBK_ERR_CHECKPOINT_TRUNCATED;
    case ErrorCode::checkpoint_version: return HVBK_ERR_CHECKPOINT_VERSION;
    case ErrorCode::blowup: return HVBK_ERR_BLOWUP;
    case ErrorCode::grid_mismatch:
    case ErrorCode::gauge_violation:
    case ErrorCode::not_divergence_free:
    case ErrorCode::precondition: return HVBK_ERR_PRECONDITION;
  }
  return HVBK_ERR_INTERNAL;
}

hvbk_status fail(hvbk_status s, const std::string& what) {
  last_error = what;
  return s;
}

template <class F>
hvbk_status guarded(F&& body) {
  try {
    body();
    return HVBK_OK;
  } catch (const hvbk::Error& e) {
    return fail(status_of(e.code()), std::string(hvbk::to_string(e.code())) + ": " + e.what());
  } catch (const BufferTooSmall& e) {
    return fail(HVBK_ERR_BUFFER_TOO_SMALL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HVBK_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HVBK_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HVBK_ERR_INTERNAL, "unknown exception");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw hvbk::Error(hvbk::ErrorCode::invalid_argument, what);
}

const hvbk::SpectralField& fluid_field(const hvbk::TwoFluidState& s, int fluid) {
  require(fluid == 0 || fluid == 1, "fluid must be 0 (normal) or 1 (super)");
  return fluid == 0 ? s.omega_n : s.omega_s;
}

void require_config_grid(const hvbk::RunConfig& cfg, const hvbk::TwoFluidState& s) {
  const hvbk::Grid& g = s.grid();
  if (g.n() != cfg.n || std::abs(g.length() - cfg.length) > 1e-12 * cfg.length) {
    throw hvbk::Error(hvbk::ErrorCode::grid_mismatch,
                      "state grid (n = " + std::to_string(g.n()) +
                          ") does not match the configuration (grid.n = " + std::to_string(cfg.n) + ")");
  }
}

}  // namespace

extern "C" {

const char* hvbk_version(void) { return "0.1.0"; }

const char* hvbk_status_name(hvbk_status status) {
  switch (status) {
    case HVBK_OK: return "ok";
    case HVBK_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case HVBK_ERR_CONFIG: return "config";
    case HVBK_ERR_IO: return "io";
    case HVBK_ERR_CHECKPOINT_CORRUPT: return "checkpoint_corrupt";
    case HVBK_ERR_CHECKPOINT_TRUNCATED: return "checkpoint_truncated";
    case HVBK_ERR_CHECKPOINT_VERSION: return "checkpoint_version";
    case HVBK_ERR_PRECONDITION: return "precondition";
    case HVBK_ERR_BLOWUP: return "blowup";
    case HVBK_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case HVBK_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* hvbk_last_error(void) { return last_error.c_str(); }

int hvbk_set_threads(int threads) { return hvbk::set_fft_threads(threads); }

hvbk_status hvbk_config_load(const char* path, hvbk_config** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new hvbk_config{hvbk::load_config(path)};
  });
}

hvbk_status hvbk_config_default(hvbk_config** out) {
  return guarded([&] {
    require(out, "null argument");
    *out = new hvbk_config{hvbk::default_config()};
  });
}

hvbk_status hvbk_config_set(hvbk_config* cfg, const char* key, const char* value) {
  return guarded([&] {
    require(cfg && key && value, "null argument");
    hvbk::RunConfig next = cfg->cfg;
    hvbk::set_config_value(next, key, value);
    hvbk::validate_config(next);
    cfg->cfg = std::move(next);
  });
}

hvbk_status hvbk_config_echo(const hvbk_config* cfg, char* buf, size_t cap, size_t* needed) {
  std::string text;
  const hvbk_status s = guarded([&] {
    require(cfg, "null argument");
    text = hvbk::echo_config(cfg->cfg);
  });
  if (s != HVBK_OK) return s;
  if (needed) *needed = text.size() + 1;
  if (!buf) return HVBK_OK;
  if (cap < text.size() + 1) return fail(HVBK_ERR_BUFFER_TOO_SMALL, "echo buffer too small");
  std::memcpy(buf, text.c_str(), text.size() + 1);
  return HVBK_OK;
}

void hvbk_config_free(hvbk_config* cfg) { delete cfg; }

hvbk_status hvbk_state_from_config(const hvbk_config* cfg, hvbk_state** out) {
  return guarded([&] {
    require(cfg && out, "null argument");
    *out = new hvbk_state{hvbk::initial_state(cfg->cfg), cfg->cfg.phys, std::nullopt};
  });
}

hvbk_status hvbk_state_load(const char* path, hvbk_state** out) {
  return guarded([&] {
    require(path && out, "null argument");
    hvbk::Checkpoint c = hvbk::load_checkpoint(path);
    *out = new hvbk_state{std::move(c.state), c.params, std::move(c.pressures)};
  });
}

hvbk_status hvbk_state_save(const hvbk_state* state, const char* path, int with_pressure) {
  return guarded([&] {
    require(state && path, "null argument");
    if (with_pressure) {
      const hvbk::PressurePair p =
          state->pressures ? *state->pressures : hvbk::solve_pressure(state->state, state->params);
      hvbk::save_checkpoint(path, state->state, state->params, &p);
    } else {
      hvbk::save_checkpoint(path, state->state, state->params);
    }
  });
}

hvbk_status hvbk_state_info_get(const hvbk_state* state, hvbk_state_info* out) {
  return guarded([&] {
    require(state && out, "null argument");
    const hvbk::PhysParams& p = state->params;
    *out = hvbk_state_info{state->state.grid().n(), state->state.grid().length(), state->state.t,
                           p.rho_n, p.rho_s, p.nu_n, p.nu_s, p.b, p.b_prime,
                           state->pressures ? 1 : 0};
  });
}

hvbk_status hvbk_state_vorticity(const hvbk_state* state, int fluid, double* out, size_t count) {
  return guarded([&] {
    require(state && out, "null argument");
    const hvbk::PhysicalField w = hvbk::spectral::inverse(fluid_field(state->state, fluid));
    require(count == w.size(), "count must be n * n");
    std::memcpy(out, w.values().data(), count * sizeof(double));
  });
}

void hvbk_state_free(hvbk_state* state) { delete state; }

hvbk_status hvbk_state_diagnostics(const hvbk_state* state, double sobolev_m, hvbk_diagnostics* out) {
  return guarded([&] {
    require(state && out, "null argument");
    const hvbk::TwoFluidState& s = state->state;
    const hvbk::PhysParams& p = state->params;
    const hvbk::DiagnosticsRecord r = hvbk::compute_record(s, p, sobolev_m);
    const hvbk::PressureRhsNorms rhs = hvbk::pressure_rhs_norms(s, p, sobolev_m);
    const hvbk::PressurePair pressures = state->pressures ? *state->pressures : hvbk::solve_pressure(s, p);
    const hvbk::VorticityPair rate = hvbk::rhs_vorticity(s, p);
    *out = hvbk_diagnostics{r.t, r.energy, r.diss_n, r.diss_s, r.fric_diss, r.enstrophy,
                            r.palinstrophy_n, r.palinstrophy_s, r.enstrophy_rhs, r.residual_energy,
                            r.residual_enstrophy, r.bkm_integrand, r.bkm_integral, r.hm_n, r.hm_s,
                            r.linf_wn, r.linf_ws, r.linf_du, r.momentum_x, r.momentum_y,
                            r.fric_enstrophy, hvbk::energy_residual_instant(s, p),
                            hvbk::enstrophy_residual_instant(s, p), rhs.n, rhs.s,
                            hvbk::momentum_residual(s, p, pressures, rate),
                            hvbk::high_band_fraction(s, p)};
  });
}

hvbk_status hvbk_run(const hvbk_config* cfg, const hvbk_state* initial, hvbk_run_report* report,
                     hvbk_state** final_out) {
  if (report) *report = hvbk_run_report{};
  return guarded([&] {
    require(cfg, "null argument");
    const hvbk::RunConfig& c = cfg->cfg;
    std::optional<hvbk::TwoFluidState> owned;
    const hvbk::TwoFluidState* start = nullptr;
    if (initial) {
      require_config_grid(c, initial->state);
      start = &initial->state;
    } else {
      owned = hvbk::initial_state(c);
      start = &*owned;
    }
    try {
      hvbk::RunOutcome o = hvbk::run_config(c, *start);
      if (report) {
        *report = hvbk_run_report{o.report.steps, o.records, int(o.checkpoints.size()),
                                  o.report.final_state.t, o.report.wall_seconds,
                                  o.report.max_residual_energy, o.report.max_residual_enstrophy,
                                  o.report.max_energy_increase, o.report.bkm_integral, 0.0};
      }
      if (final_out) *final_out = new hvbk_state{std::move(o.report.final_state), c.phys, std::nullopt};
    } catch (const hvbk::BlowupError& e) {
      if (report) report->blowup_time = e.last_valid_time();
      throw;
    }
  });
}

hvbk_status hvbk_picard(const hvbk_config* cfg, const hvbk_state* data, hvbk_picard_point* points,
                        size_t cap, size_t* count, double* slope) {
  return guarded([&] {
    require(cfg && data, "null argument");
    require_config_grid(cfg->cfg, data->state);
    const std::size_t want = std::size_t(cfg->cfg.probe.scan_points);
    if (count) *count = want;
    if (!points) return;
    if (cap < want) throw BufferTooSmall("points buffer too small");
    const hvbk::PicardScan scan = hvbk::picard_scan(cfg->cfg, hvbk::velocities(data->state));
    for (std::size_t i = 0; i < scan.horizons.size(); ++i) {
      points[i] = hvbk_picard_point{scan.horizons[i], scan.factors[i], scan.converged[i]};
    }
    if (slope) *slope = scan.slope;
  });
}

hvbk_status hvbk_probe_existence(const hvbk_config* cfg, const hvbk_state* data,
                                 hvbk_existence_point* points, size_t cap, size_t* count,
                                 double* exponent) {
  return guarded([&] {
    require(cfg && data, "null argument");
    require_config_grid(cfg->cfg, data->state);
    const std::size_t want = cfg->cfg.probe.scales.size();
    if (count) *count = want;
    if (!points) return;
    if (cap < want) throw BufferTooSmall("points buffer too small");
    const hvbk::ExistenceScaling e = hvbk::existence_scaling(cfg->cfg, hvbk::velocities(data->state));
    for (std::size_t i = 0; i < e.scales.size(); ++i) {
      points[i] = hvbk_existence_point{e.scales[i], e.data_norms[i], e.t_star[i], e.capped[i]};
    }
    if (exponent) *exponent = e.exponent;
  });
}

hvbk_status hvbk_check_energy_bound(const hvbk_state* state, int fluid, double tol_domain,
                                    hvbk_moment_report* out) {
  return guarded([&] {
    require(state && out, "null argument");
    const hvbk::MomentReport r = hvbk::energy_bound_check(fluid_field(state->state, fluid), tol_domain);
    *out = hvbk_moment_report{r.l2_omega, r.moment1, r.moment1_min, r.l2_u, r.bound, r.bound_min,
                              r.cutoff_k, r.low_term, r.high_term, r.tol_domain,
                              r.low_ok ? 1 : 0, r.high_ok ? 1 : 0, r.satisfied ? 1 : 0};
  });
}

}  // extern "C"
