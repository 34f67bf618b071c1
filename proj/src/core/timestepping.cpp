#include "core/timestepping.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "core/spectral.hpp"

namespace hvbk {

using namespace spectral;

namespace {

constexpr double kBlowupLevel = 1e12;

// exp(-nu |k|^2 h) per mode
std::vector<double> decay_factors(const Grid& g, double nu, double h) {
  std::vector<double> e(g.spectral_size());
  for (std::size_t s = 0; s < e.size(); ++s) e[s] = std::exp(-nu * g.k2(s) * h);
  return e;
}

void scale(SpectralField& f, const std::vector<double>& e) {
  for (std::size_t s = 0; s < f.size(); ++s) f[s] *= e[s];
}

SpectralField scaled(SpectralField f, const std::vector<double>& e) {
  scale(f, e);
  return f;
}

void check_finite(const TwoFluidState& s, double last_valid) {
  for (const SpectralField* f : {&s.omega_n, &s.omega_s}) {
    for (const Complex& c : f->coefficients()) {
      if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
        throw BlowupError(last_valid, "non-finite vorticity");
      }
    }
    if (linf_norm(*f) > kBlowupLevel) throw BlowupError(last_valid, "vorticity exceeds 1e12");
  }
}

// One field of the integrating-factor RK4 update, given the four stage
// derivatives and the half-step factor e.
SpectralField combine(const SpectralField& a, const SpectralField& k1, const SpectralField& k2,
                      const SpectralField& k3, const SpectralField& k4,
                      const std::vector<double>& e, double dt) {
  SpectralField out(a.grid_ptr());
  for (std::size_t s = 0; s < a.size(); ++s) {
    const double e2 = e[s] * e[s];
    out[s] = e2 * a[s] + dt / 6 * (e2 * k1[s] + 2 * e[s] * (k2[s] + k3[s]) + k4[s]);
  }
  return dealias(std::move(out));
}

}  // namespace

void IntegratorConfig::validate() const {
  if (dt < 0.0 || !std::isfinite(dt)) throw Error(ErrorCode::invalid_argument, "time.dt must be positive");
  if (dt == 0.0 && !(cfl > 0.0 && cfl <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "time.cfl must lie in (0, 1] when time.dt is not set");
  }
  if (!(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw Error(ErrorCode::invalid_argument, "time.t_end must be non-negative");
  }
  if (output_every < 1) throw Error(ErrorCode::invalid_argument, "time.output_every must be >= 1");
  if (checkpoint_every < 0.0) {
    throw Error(ErrorCode::invalid_argument, "time.checkpoint_every must be non-negative");
  }
}

TwoFluidState step(const TwoFluidState& state, const PhysParams& p, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "step: dt must be positive");
  const Grid& g = state.grid();
  const auto en = decay_factors(g, p.nu_n, dt / 2);
  const auto es = decay_factors(g, p.nu_s, dt / 2);
  const SpectralField& a = state.omega_n;
  const SpectralField& b = state.omega_s;

  const VorticityPair k1 = nonlinear_vorticity(a, b, p);
  const VorticityPair k2 = nonlinear_vorticity(scaled(a + (dt / 2) * k1.n, en),
                                               scaled(b + (dt / 2) * k1.s, es), p);
  const VorticityPair k3 = nonlinear_vorticity(scaled(a, en) + (dt / 2) * k2.n,
                                               scaled(b, es) + (dt / 2) * k2.s, p);
  SpectralField a4 = scaled(scaled(a, en), en);
  a4.axpy(dt, scaled(k3.n, en));
  SpectralField b4 = scaled(scaled(b, es), es);
  b4.axpy(dt, scaled(k3.s, es));
  const VorticityPair k4 = nonlinear_vorticity(a4, b4, p);

  TwoFluidState next{state.t + dt, combine(a, k1.n, k2.n, k3.n, k4.n, en, dt),
                     combine(b, k1.s, k2.s, k3.s, k4.s, es, dt)};
  next.omega_n[0] = 0.0;
  next.omega_s[0] = 0.0;
  check_finite(next, state.t);
  return next;
}

double cfl_dt(const TwoFluidState& state, double cfl) {
  double umax = 1e-8;
  for (const SpectralVector& u : {state.u_n(), state.u_s()}) {
    const PhysicalVector up = inverse(u);
    for (std::size_t i = 0; i < up.x.size(); ++i) umax = std::max(umax, std::hypot(up.x[i], up.y[i]));
  }
  return cfl * state.grid().dx() / umax;
}

RunReport run(const TwoFluidState& initial, const PhysParams& p, const IntegratorConfig& cfg,
              DiagnosticsSink* sink) {
  cfg.validate();
  p.validate();
  initial.validate();
  const auto wall0 = std::chrono::steady_clock::now();

  RunReport rep;
  TwoFluidState state = initial;
  DiagnosticsRecord prev = compute_record(state, p, cfg.sobolev_m);
  prev.bkm_integral = 0.0;
  if (sink) sink->record(prev);

  const double t0 = initial.t;
  const double t_stop = t0 + cfg.t_end;
  const double eps = 1e-12 * std::max(1.0, std::abs(t_stop));
  double next_checkpoint = cfg.checkpoint_every > 0.0 ? t0 + cfg.checkpoint_every : 0.0;
  long k = 0;
  while (state.t < t_stop - eps) {
    double h = cfg.dt > 0.0 ? cfg.dt : cfl_dt(state, cfg.cfl);
    h = std::min(h, t_stop - state.t);
    state = step(state, p, h);
    // Fixed-dt runs land on t0 + k*dt exactly rather than accumulating sums.
    ++k;
    if (cfg.dt > 0.0) state.t = std::min(t_stop, t0 + double(k) * cfg.dt);

    DiagnosticsRecord next = compute_record(state, p, cfg.sobolev_m);
    next.residual_energy = energy_residual(prev, next, h);
    next.residual_enstrophy = enstrophy_residual(prev, next, h);
    next.bkm_integral = prev.bkm_integral + 0.5 * h * (prev.bkm_integrand + next.bkm_integrand);
    rep.max_residual_energy = std::max(rep.max_residual_energy, next.residual_energy);
    rep.max_residual_enstrophy = std::max(rep.max_residual_enstrophy, next.residual_enstrophy);
    const double increase = next.energy - prev.energy;
    rep.max_energy_increase = k == 1 ? increase : std::max(rep.max_energy_increase, increase);

    const bool last = !(state.t < t_stop - eps);
    if (sink && (k % cfg.output_every == 0 || last)) sink->record(next);
    if (sink && next_checkpoint > 0.0 && state.t >= next_checkpoint - eps) {
      sink->checkpoint(state);
      while (next_checkpoint <= state.t + eps) next_checkpoint += cfg.checkpoint_every;
    }
    prev = next;
  }

  rep.steps = k;
  rep.bkm_integral = prev.bkm_integral;
  rep.final_state = std::move(state);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  return rep;
}

}  // namespace hvbk
