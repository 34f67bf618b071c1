#pragma once

#include "core/fields.hpp"

namespace hvbk {

struct PhysParams {
  double rho_n = 1.0;
  double rho_s = 1.0;
  double nu_n = 0.01;
  double nu_s = 0.01;
  double b = 0.0;
  double b_prime = 0.0;
  // |w| is replaced by sqrt(w^2 + eps^2) when eps > 0.
  double abs_smoothing_eps = 0.0;

  double rho() const { return rho_n + rho_s; }
  double beta_n() const { return rho_s / rho() * (b / 2); }
  double beta_n_prime() const { return rho_s / rho() * (b_prime / 2); }
  double beta_s() const { return rho_n / rho() * (b / 2); }
  double beta_s_prime() const { return rho_n / rho() * (b_prime / 2); }

  // Throws ErrorCode::invalid_argument naming the offending field.
  void validate() const;
};

struct VorticityPair {
  SpectralField n, s;
};

struct VelocityPair {
  SpectralVector n, s;
};

// Spectral vorticities at time t. Velocities are derived on demand.
struct TwoFluidState {
  double t = 0.0;
  SpectralField omega_n, omega_s;

  const Grid& grid() const { return omega_n.grid(); }
  const GridPtr& grid_ptr() const { return omega_n.grid_ptr(); }
  SpectralVector u_n() const;
  SpectralVector u_s() const;

  // Same grid, zero mean (to 1e-10 of the norm), finite coefficients.
  void validate() const;
};

// Checks the gauge and then sets both mean modes to exactly zero.
TwoFluidState make_state(double t, SpectralField omega_n, SpectralField omega_s);

// Pointwise |w| (or its smoothed version).
PhysicalField abs_vorticity(const PhysicalField& w, double eps);

// F = -(B/2)|w_s|(u_n - u_s) + (B'/2) w_s z x (u_n - u_s), formed on the grid
// and dealiased. The mean mode is kept.
SpectralVector mutual_friction(const SpectralField& omega_s, const SpectralVector& u_n,
                               const SpectralVector& u_s, const PhysParams& p);

// -(B/2) curl(|w_s| w) + (B'/2) w . grad w_s with w = u_n - u_s, dealiased,
// zero mean.
SpectralField friction_torque(const SpectralField& omega_s, const SpectralVector& u_n,
                              const SpectralVector& u_s, const PhysParams& p);

// (u . grad) f and (u . grad) v, dealiased.
SpectralField advection(const SpectralVector& u, const SpectralField& f);
SpectralVector advection(const SpectralVector& u, const SpectralVector& v);

// Advection and friction only (the part the integrator treats explicitly).
VorticityPair nonlinear_vorticity(const SpectralField& omega_n, const SpectralField& omega_s,
                                  const PhysParams& p);

// Full time derivative of (w_n, w_s), including viscosity.
VorticityPair rhs_vorticity(const TwoFluidState& state, const PhysParams& p);

// -(u_i . grad) u_i +/- friction before projection, without viscosity and with
// the mean mode removed. Zero-mean velocities on the torus carry no mean
// force; the two friction means cancel in the momentum-weighted sum.
VelocityPair velocity_forcing(const SpectralVector& u_n, const SpectralVector& u_s,
                              const PhysParams& p);

// Leray-projected velocity-form right-hand sides. Throws not_divergence_free
// when either input has divergence above 1e-8 of its H^1 norm.
VelocityPair rhs_velocity(const SpectralVector& u_n, const SpectralVector& u_s,
                          const PhysParams& p);

}  // namespace hvbk
