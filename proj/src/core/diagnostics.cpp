#include "core/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "core/spectral.hpp"

namespace hvbk {

using namespace spectral;

namespace {

double sum_sq(const PhysicalField& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v * v;
  return acc * f.grid().cell_area();
}

double sum_sq(const PhysicalVector& v) { return sum_sq(v.x) + sum_sq(v.y); }

double linf_magnitude(const PhysicalVector& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.x.size(); ++i) m = std::max(m, std::hypot(v.x[i], v.y[i]));
  return m;
}

// Grid quadrature of (w_n - w_s)(u_n - u_s).(B' grad w_s + B perp_grad|w_s|).
// The perpendicular gradient of |w_s| is taken spectrally from its samples.
double source_quadrature(const PhysicalField& zeta, const PhysicalVector& du,
                         const SpectralField& omega_s, const PhysicalField& abs_ws,
                         const PhysParams& p) {
  const PhysicalVector gws = inverse(gradient(omega_s));
  const PhysicalVector pga = inverse(perp_grad(forward(abs_ws)));
  double acc = 0.0;
  for (std::size_t i = 0; i < zeta.size(); ++i) {
    const double gx = p.b_prime * gws.x[i] + p.b * pga.x[i];
    const double gy = p.b_prime * gws.y[i] + p.b * pga.y[i];
    acc += zeta[i] * (du.x[i] * gx + du.y[i] * gy);
  }
  return acc * zeta.grid().cell_area() * p.rho_n * p.rho_s / (2 * p.rho());
}

struct Fields {
  SpectralVector un, us;
  PhysicalVector un_p, us_p, du;
  PhysicalField wn, ws, abs_ws, zeta;
};

Fields evaluate(const TwoFluidState& s, const PhysParams& p) {
  Fields f;
  f.un = s.u_n();
  f.us = s.u_s();
  f.un_p = inverse(f.un);
  f.us_p = inverse(f.us);
  f.wn = inverse(s.omega_n);
  f.ws = inverse(s.omega_s);
  f.abs_ws = abs_vorticity(f.ws, p.abs_smoothing_eps);
  const auto& g = s.grid_ptr();
  f.du = {PhysicalField(g), PhysicalField(g)};
  f.zeta = PhysicalField(g);
  for (std::size_t i = 0; i < f.wn.size(); ++i) {
    f.du.x[i] = f.un_p.x[i] - f.us_p.x[i];
    f.du.y[i] = f.un_p.y[i] - f.us_p.y[i];
    f.zeta[i] = f.wn[i] - f.ws[i];
  }
  return f;
}

double weighted_abs_integral(const PhysicalField& a, const PhysicalField& f2) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * f2[i];
  return acc * a.grid().cell_area();
}

double dissipation_sum(const DiagnosticsRecord& r) { return r.diss_n + r.diss_s + r.fric_diss; }

}  // namespace

DiagnosticsRecord compute_record(const TwoFluidState& state, const PhysParams& p,
                                 double sobolev_m) {
  const Fields f = evaluate(state, p);
  const double c = p.rho_n * p.rho_s / p.rho();
  DiagnosticsRecord r;
  r.t = state.t;
  r.energy = 0.5 * p.rho_n * sum_sq(f.un_p) + 0.5 * p.rho_s * sum_sq(f.us_p);
  // |grad u|^2 = |w|^2 for zero-mean divergence-free fields on the torus.
  r.diss_n = p.rho_n * p.nu_n * sum_sq(f.wn);
  r.diss_s = p.rho_s * p.nu_s * sum_sq(f.ws);
  if (p.b != 0.0) {
    PhysicalField du2(state.grid_ptr()), zeta2(state.grid_ptr());
    for (std::size_t i = 0; i < du2.size(); ++i) {
      du2[i] = f.du.x[i] * f.du.x[i] + f.du.y[i] * f.du.y[i];
      zeta2[i] = f.zeta[i] * f.zeta[i];
    }
    r.fric_diss = c * (p.b / 2) * weighted_abs_integral(f.abs_ws, du2);
    r.fric_enstrophy = c * (p.b / 2) * weighted_abs_integral(f.abs_ws, zeta2);
  }
  r.enstrophy = 0.5 * p.rho_n * sum_sq(f.wn) + 0.5 * p.rho_s * sum_sq(f.ws);
  r.palinstrophy_n = sum_sq(inverse(gradient(state.omega_n)));
  r.palinstrophy_s = sum_sq(inverse(gradient(state.omega_s)));
  r.enstrophy_sink = p.rho_n * p.nu_n * r.palinstrophy_n + p.rho_s * p.nu_s * r.palinstrophy_s +
                     r.fric_enstrophy;
  if (p.b != 0.0 || p.b_prime != 0.0) {
    r.enstrophy_rhs = source_quadrature(f.zeta, f.du, state.omega_s, f.abs_ws, p);
  }
  r.linf_wn = linf_norm(f.wn);
  r.linf_ws = linf_norm(f.ws);
  r.linf_du = linf_magnitude(f.du);
  r.bkm_integrand = 1.0 + r.linf_du * r.linf_du + r.linf_wn + r.linf_ws;
  r.hm_n = sobolev_norm(f.un, sobolev_m);
  r.hm_s = sobolev_norm(f.us, sobolev_m);
  PhysicalField mx(state.grid_ptr()), my(state.grid_ptr());
  for (std::size_t i = 0; i < mx.size(); ++i) {
    mx[i] = p.rho_n * f.un_p.x[i] + p.rho_s * f.us_p.x[i];
    my[i] = p.rho_n * f.un_p.y[i] + p.rho_s * f.us_p.y[i];
  }
  r.momentum_x = integral(mx);
  r.momentum_y = integral(my);
  return r;
}

double energy_residual(const DiagnosticsRecord& prev, const DiagnosticsRecord& next, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::invalid_argument, "energy_residual: dt must be positive");
  const double d = 0.5 * (dissipation_sum(prev) + dissipation_sum(next));
  return std::abs((next.energy - prev.energy) / dt + d) / std::max(1.0, d);
}

double enstrophy_residual(const DiagnosticsRecord& prev, const DiagnosticsRecord& next,
                          double dt) {
  if (!(dt > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "enstrophy_residual: dt must be positive");
  }
  const double sink = 0.5 * (prev.enstrophy_sink + next.enstrophy_sink);
  const double src = 0.5 * (prev.enstrophy_rhs + next.enstrophy_rhs);
  return std::abs((next.enstrophy - prev.enstrophy) / dt + sink - src) /
         std::max(1.0, sink + std::abs(src));
}

double enstrophy_source(const TwoFluidState& state, const PhysParams& p) {
  if (p.b == 0.0 && p.b_prime == 0.0) return 0.0;
  const Fields f = evaluate(state, p);
  return source_quadrature(f.zeta, f.du, state.omega_s, f.abs_ws, p);
}

double energy_residual_instant(const TwoFluidState& state, const PhysParams& p) {
  const VorticityPair dw = rhs_vorticity(state, p);
  // E = (rho/2) <psi, w> with -lap psi = w, so dE/dt = rho <psi, dw/dt>.
  const double de = p.rho_n * inner(inv_laplacian(state.omega_n), dw.n) +
                    p.rho_s * inner(inv_laplacian(state.omega_s), dw.s);
  const DiagnosticsRecord r = compute_record(state, p, 0.0);
  const double d = dissipation_sum(r);
  return std::abs(de + d) / std::max(1.0, d);
}

double enstrophy_residual_instant(const TwoFluidState& state, const PhysParams& p) {
  const VorticityPair dw = rhs_vorticity(state, p);
  const double dz = p.rho_n * inner(state.omega_n, dw.n) + p.rho_s * inner(state.omega_s, dw.s);
  const DiagnosticsRecord r = compute_record(state, p, 0.0);
  return std::abs(dz + r.enstrophy_sink - r.enstrophy_rhs) /
         std::max(1.0, r.enstrophy_sink + std::abs(r.enstrophy_rhs));
}

double bkm_integrand(const TwoFluidState& state) {
  const PhysicalVector du = inverse(state.u_n() - state.u_s());
  const double d = linf_magnitude(du);
  return 1.0 + d * d + linf_norm(inverse(state.omega_n)) + linf_norm(inverse(state.omega_s));
}

GronwallFit gronwall_enstrophy_bound(const std::vector<DiagnosticsRecord>& history,
                                     const PhysParams& p) {
  GronwallFit fit;
  if (history.empty()) return fit;
  const double z0 = history.front().enstrophy;
  auto grad_u2 = [&](const DiagnosticsRecord& r) {
    return r.diss_n / (p.rho_n * p.nu_n) + r.diss_s / (p.rho_s * p.nu_s);
  };
  auto pal = [&](const DiagnosticsRecord& r) {
    return 0.5 * p.rho_n * p.nu_n * r.palinstrophy_n + 0.25 * p.rho_s * p.nu_s * r.palinstrophy_s;
  };
  std::vector<double> big_i(history.size(), 0.0);
  double j = 0.0, k = 0.0;
  for (std::size_t i = 1; i < history.size(); ++i) {
    const auto& a = history[i - 1];
    const auto& b = history[i];
    const double h = b.t - a.t;
    big_i[i] = big_i[i - 1] + 0.5 * h * (grad_u2(a) + grad_u2(b));
    j += 0.5 * h * (pal(a) + pal(b));
    k += 0.5 * h * (a.enstrophy * grad_u2(a) + b.enstrophy * grad_u2(b));
    if (z0 > 0.0 && big_i[i] > 0.0) {
      fit.c = std::max(fit.c, std::log(b.enstrophy / z0) / big_i[i]);
    }
    if (k > 0.0) fit.c_pal = std::max(fit.c_pal, (b.enstrophy + j - z0) / k);
  }
  bool finite = std::isfinite(fit.c) && std::isfinite(fit.c_pal);
  for (std::size_t i = 0; i < history.size(); ++i) {
    fit.t.push_back(history[i].t);
    fit.bound.push_back(z0 * std::exp(fit.c * big_i[i]));
    finite = finite && std::isfinite(history[i].enstrophy);
  }
  fit.finite = finite;
  return fit;
}

BkmPotentialCheck bkm_potential_check(const SpectralField& omega, double m, double c_fit) {
  if (!(m > 2.0)) throw Error(ErrorCode::invalid_argument, "bkm_potential_check: m must exceed 2");
  const SpectralVector u = biot_savart(omega);
  const PhysicalVector gx = inverse(gradient(u.x));
  const PhysicalVector gy = inverse(gradient(u.y));
  double lhs = 0.0;
  for (std::size_t i = 0; i < gx.x.size(); ++i) {
    const double fro = std::sqrt(gx.x[i] * gx.x[i] + gx.y[i] * gx.y[i] + gy.x[i] * gy.x[i] +
                                 gy.y[i] * gy.y[i]);
    lhs = std::max(lhs, fro);
  }
  const double base =
      l2_norm(omega) + linf_norm(omega) * (1.0 + std::log(1.0 + sobolev_norm(u, m)));
  BkmPotentialCheck out;
  out.lhs = lhs;
  out.rhs = c_fit * base;
  out.ratio = base > 0.0 ? lhs / base : 0.0;
  out.satisfied = lhs <= out.rhs;
  return out;
}

double calibrate_bkm_constant(const std::vector<SpectralField>& corpus, double m) {
  double c = 0.0;
  for (const auto& w : corpus) c = std::max(c, bkm_potential_check(w, m, 1.0).ratio);
  return c;
}

double high_band_fraction(const TwoFluidState& state, const PhysParams& p) {
  const Grid& g = state.grid();
  const double cut = g.n() / 4.0 * g.k0();
  double high = 0.0, total = 0.0;
  for (std::size_t s = 1; s < g.spectral_size(); ++s) {
    // |u_k|^2 = |w_k|^2 / |k|^2
    const double e = g.weight(s) *
                     (p.rho_n * std::norm(state.omega_n[s]) + p.rho_s * std::norm(state.omega_s[s])) /
                     g.k2(s);
    total += e;
    if (g.k2(s) > cut * cut) high += e;
  }
  return total > 0.0 ? high / total : 0.0;
}

SmoothingReport smoothing_monitor(std::vector<double> t, std::vector<double> fraction) {
  SmoothingReport rep;
  rep.t = std::move(t);
  rep.fraction = std::move(fraction);
  if (rep.fraction.empty() || !(rep.fraction.front() > 0.0)) {
    rep.degenerate = true;
    return rep;
  }
  const double tol = 1e-3 * rep.fraction.front();
  rep.monotone = true;
  for (std::size_t i = 1; i < rep.fraction.size(); ++i) {
    if (rep.fraction[i] > rep.fraction[i - 1] + tol) rep.monotone = false;
  }
  return rep;
}

}  // namespace hvbk
