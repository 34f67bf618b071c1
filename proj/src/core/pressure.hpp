#pragma once

#include "core/model.hpp"

namespace hvbk {

struct PressurePair {
  SpectralField p_n, p_s;
};

// Zero-mean pressures that make each fluid's unprojected right-hand side
// divergence free:
//   -lap p_n = div div(u_n u_n) + beta_n (u_n - u_s).grad|w_s| - beta_n' div(w_s z x (u_n - u_s))
// and the superfluid analogue with (-beta_s, +beta_s'). The right-hand side is
// assembled as the divergence of the same dealiased products the velocity
// form uses, so grad p is exactly the part the Leray projector removes.
PressurePair solve_pressure(const TwoFluidState& state, const PhysParams& p);

// H^{m-2} norm of each Poisson right-hand side (conditioning indicator).
struct PressureRhsNorms {
  double n = 0.0, s = 0.0;
};
PressureRhsNorms pressure_rhs_norms(const TwoFluidState& state, const PhysParams& p, double m);

// max over fluids of |du_i/dt + (u_i.grad)u_i + grad p_i - nu_i lap u_i -/+ friction|_2,
// where du/dt is the Biot-Savart image of the vorticity time derivative. The
// mean mode is excluded: zero-mean velocities on the torus absorb the mean
// friction force into a uniform pressure gradient.
double momentum_residual(const TwoFluidState& state, const PhysParams& p,
                         const PressurePair& pressures, const VorticityPair& dstate_dt);

}  // namespace hvbk
