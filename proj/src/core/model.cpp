#include "core/model.hpp"

#include <cmath>
#include <string>

#include "core/spectral.hpp"

namespace hvbk {

using namespace spectral;

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::invalid_argument, std::string(name) + " must be positive");
  }
}

void require_nonnegative(double v, const char* name) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::invalid_argument, std::string(name) + " must be non-negative");
  }
}

bool all_finite(const SpectralField& f) {
  for (const Complex& c : f.coefficients()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  }
  return true;
}

PhysicalField times(const PhysicalField& a, const PhysicalField& b) {
  PhysicalField out(a.grid_ptr());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
  return out;
}

// a.x * b.x + a.y * b.y on the grid
PhysicalField dot(const PhysicalVector& a, const PhysicalVector& b) {
  PhysicalField out(a.x.grid_ptr());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.x[i] * b.x[i] + a.y[i] * b.y[i];
  return out;
}

bool friction_off(const PhysParams& p) { return p.b == 0.0 && p.b_prime == 0.0; }

SpectralVector zero_vector(const GridPtr& g) { return {SpectralField(g), SpectralField(g)}; }

}  // namespace

void PhysParams::validate() const {
  require_positive(rho_n, "fluid.rho_n");
  require_positive(rho_s, "fluid.rho_s");
  require_positive(nu_n, "fluid.nu_n");
  require_positive(nu_s, "fluid.nu_s");
  require_nonnegative(b, "friction.b");
  require_nonnegative(b_prime, "friction.b_prime");
  require_nonnegative(abs_smoothing_eps, "friction.abs_smoothing_eps");
}

SpectralVector TwoFluidState::u_n() const { return biot_savart(omega_n); }
SpectralVector TwoFluidState::u_s() const { return biot_savart(omega_s); }

void TwoFluidState::validate() const {
  require_same_grid(omega_n.grid(), omega_s.grid(), "state");
  if (!all_finite(omega_n) || !all_finite(omega_s)) {
    throw Error(ErrorCode::invalid_argument, "state contains non-finite values");
  }
  if (!has_zero_mean(omega_n, 1e-10) || !has_zero_mean(omega_s, 1e-10)) {
    throw Error(ErrorCode::gauge_violation, "state vorticity must have zero mean");
  }
}

TwoFluidState make_state(double t, SpectralField omega_n, SpectralField omega_s) {
  TwoFluidState s{t, std::move(omega_n), std::move(omega_s)};
  s.validate();
  s.omega_n[0] = 0.0;
  s.omega_s[0] = 0.0;
  return s;
}

PhysicalField abs_vorticity(const PhysicalField& w, double eps) {
  PhysicalField out(w.grid_ptr());
  if (eps > 0.0) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::sqrt(w[i] * w[i] + eps * eps);
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(w[i]);
  }
  return out;
}

SpectralVector mutual_friction(const SpectralField& omega_s, const SpectralVector& u_n,
                               const SpectralVector& u_s, const PhysParams& p) {
  require_same_grid(omega_s.grid(), u_n.grid(), "mutual_friction");
  require_same_grid(omega_s.grid(), u_s.grid(), "mutual_friction");
  if (friction_off(p)) return zero_vector(omega_s.grid_ptr());

  const PhysicalField ws = inverse(omega_s);
  const PhysicalVector w = inverse(u_n - u_s);
  const PhysicalField a = abs_vorticity(ws, p.abs_smoothing_eps);
  PhysicalVector f{PhysicalField(ws.grid_ptr()), PhysicalField(ws.grid_ptr())};
  const double hb = p.b / 2, hbp = p.b_prime / 2;
  for (std::size_t i = 0; i < ws.size(); ++i) {
    f.x[i] = -hb * a[i] * w.x[i] - hbp * ws[i] * w.y[i];
    f.y[i] = -hb * a[i] * w.y[i] + hbp * ws[i] * w.x[i];
  }
  return dealias(forward(f));
}

SpectralField friction_torque(const SpectralField& omega_s, const SpectralVector& u_n,
                              const SpectralVector& u_s, const PhysParams& p) {
  require_same_grid(omega_s.grid(), u_n.grid(), "friction_torque");
  require_same_grid(omega_s.grid(), u_s.grid(), "friction_torque");
  SpectralField out(omega_s.grid_ptr());
  if (friction_off(p)) return out;

  const PhysicalVector w = inverse(u_n - u_s);
  if (p.b != 0.0) {
    const PhysicalField a = abs_vorticity(inverse(omega_s), p.abs_smoothing_eps);
    const SpectralVector aw = forward(PhysicalVector{times(a, w.x), times(a, w.y)});
    out.axpy(-p.b / 2, curl(aw));
  }
  if (p.b_prime != 0.0) {
    const PhysicalField wgrad = dot(w, inverse(gradient(omega_s)));
    out.axpy(p.b_prime / 2, forward(wgrad));
  }
  out = dealias(std::move(out));
  out[0] = 0.0;
  return out;
}

SpectralField advection(const SpectralVector& u, const SpectralField& f) {
  require_same_grid(u.grid(), f.grid(), "advection");
  return dealias(forward(dot(inverse(u), inverse(gradient(f)))));
}

SpectralVector advection(const SpectralVector& u, const SpectralVector& v) {
  require_same_grid(u.grid(), v.grid(), "advection");
  const PhysicalVector up = inverse(u);
  return dealias(SpectralVector{forward(dot(up, inverse(gradient(v.x)))),
                                forward(dot(up, inverse(gradient(v.y))))});
}

VorticityPair nonlinear_vorticity(const SpectralField& omega_n, const SpectralField& omega_s,
                                  const PhysParams& p) {
  require_same_grid(omega_n.grid(), omega_s.grid(), "nonlinear_vorticity");
  const SpectralVector un = biot_savart(omega_n);
  const SpectralVector us = biot_savart(omega_s);
  VorticityPair r{-1.0 * advection(un, omega_n), -1.0 * advection(us, omega_s)};
  if (!friction_off(p)) {
    const SpectralField torque = friction_torque(omega_s, un, us, p);
    r.n.axpy(p.rho_s / p.rho(), torque);
    r.s.axpy(-p.rho_n / p.rho(), torque);
  }
  r.n[0] = 0.0;
  r.s[0] = 0.0;
  return r;
}

VorticityPair rhs_vorticity(const TwoFluidState& state, const PhysParams& p) {
  VorticityPair r = nonlinear_vorticity(state.omega_n, state.omega_s, p);
  r.n.axpy(p.nu_n, laplacian(state.omega_n));
  r.s.axpy(p.nu_s, laplacian(state.omega_s));
  return r;
}

VelocityPair velocity_forcing(const SpectralVector& u_n, const SpectralVector& u_s,
                              const PhysParams& p) {
  require_same_grid(u_n.grid(), u_s.grid(), "velocity_forcing");
  VelocityPair g{-1.0 * advection(u_n, u_n), -1.0 * advection(u_s, u_s)};
  if (!friction_off(p)) {
    // Vorticity of the superfluid from its velocity.
    const SpectralVector f = mutual_friction(curl(u_s), u_n, u_s, p);
    g.n.axpy(p.rho_s / p.rho(), f);
    g.s.axpy(-p.rho_n / p.rho(), f);
  }
  for (SpectralVector* v : {&g.n, &g.s}) {
    v->x[0] = 0.0;
    v->y[0] = 0.0;
  }
  return g;
}

VelocityPair rhs_velocity(const SpectralVector& u_n, const SpectralVector& u_s,
                          const PhysParams& p) {
  for (const SpectralVector* u : {&u_n, &u_s}) {
    const double scale = sobolev_norm(*u, 1.0);
    if (l2_norm(divergence(*u)) > 1e-8 * scale) {
      throw Error(ErrorCode::not_divergence_free, "rhs_velocity: input velocity has divergence");
    }
  }
  VelocityPair g = velocity_forcing(u_n, u_s, p);
  g.n.x.axpy(p.nu_n, laplacian(u_n.x));
  g.n.y.axpy(p.nu_n, laplacian(u_n.y));
  g.s.x.axpy(p.nu_s, laplacian(u_s.x));
  g.s.y.axpy(p.nu_s, laplacian(u_s.y));
  return {leray_project(g.n), leray_project(g.s)};
}

}  // namespace hvbk
