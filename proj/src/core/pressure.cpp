#include "core/pressure.hpp"

#include <algorithm>

#include "core/spectral.hpp"

namespace hvbk {

using namespace spectral;

namespace {

// div(g - grad p) = 0, i.e. lap p = div g.
SpectralField pressure_from(const SpectralVector& g) {
  SpectralField d = divergence(g);
  d[0] = 0.0;
  return -1.0 * inv_laplacian(d);
}

}  // namespace

PressurePair solve_pressure(const TwoFluidState& state, const PhysParams& p) {
  const VelocityPair g = velocity_forcing(state.u_n(), state.u_s(), p);
  return {pressure_from(g.n), pressure_from(g.s)};
}

PressureRhsNorms pressure_rhs_norms(const TwoFluidState& state, const PhysParams& p, double m) {
  const VelocityPair g = velocity_forcing(state.u_n(), state.u_s(), p);
  return {sobolev_norm(divergence(g.n), m - 2), sobolev_norm(divergence(g.s), m - 2)};
}

double momentum_residual(const TwoFluidState& state, const PhysParams& p,
                         const PressurePair& pressures, const VorticityPair& dstate_dt) {
  const SpectralVector un = state.u_n(), us = state.u_s();
  const VelocityPair g = velocity_forcing(un, us, p);
  auto residual = [&](const SpectralField& dw, const SpectralVector& u, const SpectralVector& gi,
                      const SpectralField& pi, double nu) {
    // du/dt - [g - grad p + nu lap u]
    SpectralVector r = biot_savart(dw);
    r -= gi;
    r += gradient(pi);
    r.x.axpy(-nu, laplacian(u.x));
    r.y.axpy(-nu, laplacian(u.y));
    r.x[0] = 0.0;
    r.y[0] = 0.0;
    return l2_norm(r);
  };
  return std::max(residual(dstate_dt.n, un, g.n, pressures.p_n, p.nu_n),
                  residual(dstate_dt.s, us, g.s, pressures.p_s, p.nu_s));
}

}  // namespace hvbk
