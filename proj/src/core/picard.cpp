#include "core/picard.hpp"

#include <algorithm>
#include <cmath>

#include "core/spectral.hpp"

namespace hvbk {

using namespace spectral;

namespace {

std::vector<double> semigroup_factors(const Grid& g, double nu, double h) {
  std::vector<double> e(g.spectral_size());
  for (std::size_t s = 0; s < e.size(); ++s) e[s] = std::exp(-nu * g.k2(s) * h);
  return e;
}

void apply(SpectralVector& v, const std::vector<double>& e) {
  for (std::size_t s = 0; s < e.size(); ++s) {
    v.x[s] *= e[s];
    v.y[s] *= e[s];
  }
}

double data_norm(const VelocityPair& d, double m) {
  return sobolev_norm(d.n, m) + sobolev_norm(d.s, m);
}

// One fluid's contribution to the X norm of a trajectory difference.
double x_norm_one(const std::vector<const SpectralVector*>& v, double nu, double h, double m) {
  double sup = 0.0, integral = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    sup = std::max(sup, sobolev_norm(*v[i], m));
    const double g = std::pow(sobolev_norm(*v[i], m + 1), 2);
    integral += (i == 0 || i + 1 == v.size()) ? 0.5 * h * g : h * g;
  }
  return sup + std::sqrt(nu) * std::sqrt(integral);
}

bool finite_traj(const Trajectory& t) {
  for (const auto& vp : t) {
    for (const SpectralVector* v : {&vp.n, &vp.s}) {
      for (const SpectralField* f : {&v->x, &v->y}) {
        for (const Complex& c : f->coefficients()) {
          if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

void PicardConfig::validate() const {
  if (!(horizon > 0.0)) throw Error(ErrorCode::invalid_argument, "picard.horizon must be positive");
  if (max_iters < 2) throw Error(ErrorCode::invalid_argument, "picard.max_iters must be >= 2");
  if (quadrature_steps < 2) {
    throw Error(ErrorCode::invalid_argument, "picard.quadrature_steps must be >= 2");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::invalid_argument, "picard.tol must be positive");
  if (bisection_rounds < 1) {
    throw Error(ErrorCode::invalid_argument, "picard.bisection_rounds must be >= 1");
  }
}

VelocityPair velocities(const TwoFluidState& s) { return {s.u_n(), s.u_s()}; }

Trajectory heat_trajectory(const VelocityPair& data, const PhysParams& p, const PicardConfig& cfg) {
  cfg.validate();
  const int q = cfg.quadrature_steps;
  const double h = cfg.horizon / q;
  const auto sn = semigroup_factors(data.n.grid(), p.nu_n, h);
  const auto ss = semigroup_factors(data.s.grid(), p.nu_s, h);
  Trajectory out;
  out.reserve(q + 1);
  out.push_back(data);
  for (int i = 1; i <= q; ++i) {
    VelocityPair next = out.back();
    apply(next.n, sn);
    apply(next.s, ss);
    out.push_back(std::move(next));
  }
  return out;
}

Trajectory picard_apply(const Trajectory& guess, const VelocityPair& data, const PhysParams& p,
                        const PicardConfig& cfg) {
  cfg.validate();
  const int q = cfg.quadrature_steps;
  if (guess.size() != std::size_t(q) + 1) {
    throw Error(ErrorCode::invalid_argument, "picard_apply: guess must have quadrature_steps + 1 samples");
  }
  const double h = cfg.horizon / q;
  const auto sn = semigroup_factors(data.n.grid(), p.nu_n, h);
  const auto ss = semigroup_factors(data.s.grid(), p.nu_s, h);

  auto integrand = [&](const VelocityPair& u) {
    VelocityPair g = velocity_forcing(u.n, u.s, p);
    return VelocityPair{leray_project(g.n), leray_project(g.s)};
  };

  Trajectory out;
  out.reserve(q + 1);
  out.push_back(data);
  VelocityPair heat = data;
  VelocityPair duhamel{0.0 * data.n, 0.0 * data.s};
  VelocityPair g_prev = integrand(guess[0]);
  for (int i = 1; i <= q; ++i) {
    const VelocityPair g = integrand(guess[i]);
    // I_i = S(h) I_{i-1} + h/2 (S(h) G_{i-1} + G_i)
    apply(duhamel.n, sn);
    apply(duhamel.s, ss);
    apply(g_prev.n, sn);
    apply(g_prev.s, ss);
    duhamel.n.axpy(h / 2, g_prev.n + g.n);
    duhamel.s.axpy(h / 2, g_prev.s + g.s);
    apply(heat.n, sn);
    apply(heat.s, ss);
    out.push_back({heat.n + duhamel.n, heat.s + duhamel.s});
    g_prev = g;
  }
  return out;
}

double x_norm(const Trajectory& v, const PhysParams& p, const PicardConfig& cfg) {
  std::vector<const SpectralVector*> vn, vs;
  for (const auto& vp : v) {
    vn.push_back(&vp.n);
    vs.push_back(&vp.s);
  }
  const double h = cfg.horizon / cfg.quadrature_steps;
  return x_norm_one(vn, p.nu_n, h, cfg.sobolev_m) + x_norm_one(vs, p.nu_s, h, cfg.sobolev_m);
}

double x_norm_difference(const Trajectory& a, const Trajectory& b, const PhysParams& p,
                         const PicardConfig& cfg) {
  if (a.size() != b.size()) throw Error(ErrorCode::invalid_argument, "x_norm_difference: size mismatch");
  Trajectory d;
  d.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back({a[i].n - b[i].n, a[i].s - b[i].s});
  return x_norm(d, p, cfg);
}

ContractionResult contraction_factor(const VelocityPair& data, const PhysParams& p,
                                     const PicardConfig& cfg) {
  cfg.validate();
  ContractionResult res;
  const double d0 = data_norm(data, cfg.sobolev_m);
  if (d0 == 0.0) {
    res.degenerate = true;
    res.converged = true;
    res.solution = heat_trajectory(data, p, cfg);
    return res;
  }
  Trajectory cur = heat_trajectory(data, p, cfg);
  double prev_diff = -1.0;
  for (int j = 0; j < cfg.max_iters; ++j) {
    Trajectory next = picard_apply(cur, data, p, cfg);
    if (!finite_traj(next)) {
      res.factor = std::max(res.factor, 1.0);
      break;
    }
    const double diff = x_norm_difference(next, cur, p, cfg);
    res.differences.push_back(diff);
    res.iterations = j + 1;
    cur = std::move(next);
    if (prev_diff > 1e-12 * d0) res.factor = std::max(res.factor, diff / prev_diff);
    prev_diff = diff;
    if (diff <= cfg.tol * d0) {
      res.converged = true;
      break;
    }
    // Runaway iterates: the map is not a contraction at this horizon.
    if (diff > 1e6 * d0) {
      res.factor = std::max(res.factor, 1.0);
      break;
    }
  }
  res.solution = std::move(cur);
  return res;
}

ExistenceProbe existence_time_probe(const VelocityPair& data, const PhysParams& p,
                                    const PicardConfig& cfg) {
  cfg.validate();
  ExistenceProbe out;
  out.data_norm = data_norm(data, cfg.sobolev_m);
  auto contracts = [&](double horizon) {
    PicardConfig c = cfg;
    c.horizon = horizon;
    const ContractionResult r = contraction_factor(data, p, c);
    return r.degenerate || r.factor < 1.0;
  };
  if (contracts(cfg.horizon)) {
    out.t_star = cfg.horizon;
    out.capped = true;
    return out;
  }
  double hi = cfg.horizon, lo = hi / 2;
  // Bracket: halve until the map contracts (bounded number of halvings).
  int halvings = 0;
  while (!contracts(lo)) {
    hi = lo;
    lo /= 2;
    if (++halvings > 60) {
      out.t_fail = hi;
      return out;
    }
  }
  for (int r = 0; r < cfg.bisection_rounds; ++r) {
    const double mid = std::sqrt(lo * hi);
    if (contracts(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.t_star = lo;
  out.t_fail = hi;
  return out;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorCode::invalid_argument, "loglog_slope: need at least two points");
  }
  double mx = 0, my = 0;
  const double n = double(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += std::log(x[i]) / n;
    my += std::log(y[i]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

LipschitzProbe lipschitz_data_probe(const TwoFluidState& data1, const TwoFluidState& data2,
                                    const PhysParams& p, double t, double dt, double sobolev_m) {
  if (!(dt > 0.0) || !(t >= 0.0)) {
    throw Error(ErrorCode::invalid_argument, "lipschitz_data_probe: bad time parameters");
  }
  auto distance = [&](const TwoFluidState& a, const TwoFluidState& b) {
    return sobolev_norm(a.u_n() - b.u_n(), sobolev_m) + sobolev_norm(a.u_s() - b.u_s(), sobolev_m);
  };
  LipschitzProbe out;
  const double d0 = distance(data1, data2);
  if (d0 == 0.0) {
    out.degenerate = true;
    return out;
  }
  TwoFluidState a = data1, b = data2;
  double sup = 1.0;
  const long steps = long(std::ceil(t / dt - 1e-9));
  for (long k = 0; k < steps; ++k) {
    const double h = std::min(dt, t - double(k) * dt);
    a = step(a, p, h);
    b = step(b, p, h);
    sup = std::max(sup, distance(a, b) / d0);
  }
  out.ratio = sup;
  return out;
}

}  // namespace hvbk
