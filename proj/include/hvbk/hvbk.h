/*
 * C interface to the HVBK two-fluid solver.
 *
 * Every function returns an hvbk_status. On failure the thread's last error
 * message (hvbk_last_error) describes what went wrong; it stays valid until
 * the next failing call on the same thread. Handles are opaque and owned by
 * the caller, who releases them with the matching *_free function.
 */
#ifndef HVBK_HVBK_H
#define HVBK_HVBK_H

#include <stddef.h>
#include <stdint.h>

#if defined(HVBK_BUILDING_LIBRARY)
#define HVBK_API __attribute__((visibility("default")))
#else
#define HVBK_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hvbk_status {
  HVBK_OK = 0,
  HVBK_ERR_INVALID_ARGUMENT = 1,
  HVBK_ERR_CONFIG = 2,
  HVBK_ERR_IO = 3,
  HVBK_ERR_CHECKPOINT_CORRUPT = 4,
  HVBK_ERR_CHECKPOINT_TRUNCATED = 5,
  HVBK_ERR_CHECKPOINT_VERSION = 6,
  HVBK_ERR_PRECONDITION = 7, /* gauge, grid mismatch, divergence, concentration */
  HVBK_ERR_BLOWUP = 8,
  HVBK_ERR_BUFFER_TOO_SMALL = 9,
  HVBK_ERR_INTERNAL = 10
} hvbk_status;

typedef struct hvbk_config hvbk_config;
typedef struct hvbk_state hvbk_state;

HVBK_API const char* hvbk_version(void);
HVBK_API const char* hvbk_status_name(hvbk_status status);
HVBK_API const char* hvbk_last_error(void);

/* Threads used by transforms planned after the call. Returns the value set. */
HVBK_API int hvbk_set_threads(int threads);

/* ---- configuration ---- */

HVBK_API hvbk_status hvbk_config_load(const char* path, hvbk_config** out);
/* A valid configuration with every key at its default (grid.n = 32, t_end = 0). */
HVBK_API hvbk_status hvbk_config_default(hvbk_config** out);
/* Sets one dotted key and revalidates. */
HVBK_API hvbk_status hvbk_config_set(hvbk_config* cfg, const char* key, const char* value);
/* Writes every effective parameter as "key = value" lines. *needed receives
 * the size including the terminating NUL; buf may be NULL to query it. */
HVBK_API hvbk_status hvbk_config_echo(const hvbk_config* cfg, char* buf, size_t cap, size_t* needed);
HVBK_API void hvbk_config_free(hvbk_config* cfg);

/* ---- states ---- */

typedef struct hvbk_state_info {
  int n;
  double length;
  double t;
  double rho_n, rho_s, nu_n, nu_s, b, b_prime;
  int has_pressure;
} hvbk_state_info;

/* Initial condition described by the config's init.* keys. */
HVBK_API hvbk_status hvbk_state_from_config(const hvbk_config* cfg, hvbk_state** out);
HVBK_API hvbk_status hvbk_state_load(const char* path, hvbk_state** out);
/* with_pressure != 0 stores the recovered pressures as well. */
HVBK_API hvbk_status hvbk_state_save(const hvbk_state* state, const char* path, int with_pressure);
HVBK_API hvbk_status hvbk_state_info_get(const hvbk_state* state, hvbk_state_info* out);
/* Real-space vorticity, row-major with y fastest; fluid 0 = normal, 1 = super.
 * count must be n * n. */
HVBK_API hvbk_status hvbk_state_vorticity(const hvbk_state* state, int fluid, double* out, size_t count);
HVBK_API void hvbk_state_free(hvbk_state* state);

/* ---- analysis ---- */

typedef struct hvbk_diagnostics {
  double t, energy, diss_n, diss_s, fric_diss, enstrophy, palinstrophy_n, palinstrophy_s;
  double enstrophy_rhs, residual_energy, residual_enstrophy, bkm_integrand, bkm_integral;
  double hm_n, hm_s, linf_wn, linf_ws, linf_du, momentum_x, momentum_y;
  double fric_enstrophy;
  double energy_residual_instant;     /* exact-derivative energy balance */
  double enstrophy_residual_instant;  /* exact-derivative enstrophy balance */
  double pressure_rhs_n, pressure_rhs_s; /* H^{m-2} norms of the Poisson sources */
  double momentum_residual;           /* with recovered pressures */
  double high_band_fraction;          /* kinetic energy above |k| = n/4 */
} hvbk_diagnostics;

HVBK_API hvbk_status hvbk_state_diagnostics(const hvbk_state* state, double sobolev_m,
                                            hvbk_diagnostics* out);

typedef struct hvbk_run_report {
  long steps;
  long records;
  int checkpoints;
  double t_final;
  double wall_seconds;
  double max_residual_energy;
  double max_residual_enstrophy;
  double max_energy_increase;
  double bkm_integral;
  double blowup_time; /* last valid time when the status is HVBK_ERR_BLOWUP */
} hvbk_run_report;

/* Integrates the config's run. initial may be NULL (use the config's initial
 * condition). final_out may be NULL. */
HVBK_API hvbk_status hvbk_run(const hvbk_config* cfg, const hvbk_state* initial,
                              hvbk_run_report* report, hvbk_state** final_out);

typedef struct hvbk_picard_point {
  double horizon;
  double factor;
  int converged;
} hvbk_picard_point;

/* Contraction-factor scan over the configured horizons. *count receives the
 * number of points; points may be NULL to query it. */
HVBK_API hvbk_status hvbk_picard(const hvbk_config* cfg, const hvbk_state* data,
                                 hvbk_picard_point* points, size_t cap, size_t* count,
                                 double* slope);

typedef struct hvbk_existence_point {
  double scale;
  double data_norm;
  double t_star;
  int capped;
} hvbk_existence_point;

/* Probe time per configured data scale. *exponent is the log-log slope of
 * t_star against data_norm over the uncapped points (0 with fewer than two). */
HVBK_API hvbk_status hvbk_probe_existence(const hvbk_config* cfg, const hvbk_state* data,
                                          hvbk_existence_point* points, size_t cap, size_t* count,
                                          double* exponent);

typedef struct hvbk_moment_report {
  double l2_omega, moment1, moment1_min, l2_u, bound, bound_min, cutoff_k;
  double low_term, high_term, tol_domain;
  int low_ok, high_ok, satisfied;
} hvbk_moment_report;

/* Energy bound for one fluid's vorticity (0 = normal, 1 = super). */
HVBK_API hvbk_status hvbk_check_energy_bound(const hvbk_state* state, int fluid, double tol_domain,
                                             hvbk_moment_report* out);

#ifdef __cplusplus
}
#endif

#endif /* HVBK_HVBK_H */
