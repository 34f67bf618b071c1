#include "core/energybound.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "core/spectral.hpp"

namespace hvbk {

using namespace spectral;

namespace {

double abs_mass(const PhysicalField& w) {
  double m = 0.0;
  for (double v : w.values()) m += std::abs(v);
  return m * w.grid().cell_area();
}

void require_concentrated(const PhysicalField& w) {
  const double f = spillover_fraction(w);
  if (f > 1e-6) {
    std::ostringstream msg;
    msg << "vorticity is not concentrated in the central half of the box (spillover fraction "
        << f << ")";
    throw Error(ErrorCode::precondition, msg.str());
  }
}

double moment_about(const PhysicalField& w, double ax, double ay) {
  const Grid& g = w.grid();
  double acc = 0.0;
  for (int ix = 0; ix < g.n(); ++ix) {
    for (int iy = 0; iy < g.n(); ++iy) {
      acc += std::hypot(g.x(ix) - ax, g.y(iy) - ay) * std::abs(w(ix, iy));
    }
  }
  return acc * g.cell_area();
}

}  // namespace

double spillover_fraction(const PhysicalField& omega) {
  const Grid& g = omega.grid();
  const double c = g.length() / 2, q = g.length() / 4;
  double outside = 0.0, total = 0.0;
  for (int ix = 0; ix < g.n(); ++ix) {
    for (int iy = 0; iy < g.n(); ++iy) {
      const double a = std::abs(omega(ix, iy));
      total += a;
      if (std::abs(g.x(ix) - c) >= q || std::abs(g.y(iy) - c) >= q) outside += a;
    }
  }
  return total > 0.0 ? outside / total : 0.0;
}

double first_moment(const PhysicalField& omega) {
  require_concentrated(omega);
  const double c = omega.grid().length() / 2;
  return moment_about(omega, c, c);
}

double first_moment_min(const PhysicalField& omega) {
  require_concentrated(omega);
  const Grid& g = omega.grid();
  const double total = abs_mass(omega);
  if (total == 0.0) return 0.0;
  // Start at the |w|-weighted centroid.
  double ax = 0.0, ay = 0.0;
  for (int ix = 0; ix < g.n(); ++ix) {
    for (int iy = 0; iy < g.n(); ++iy) {
      const double a = std::abs(omega(ix, iy)) * g.cell_area();
      ax += a * g.x(ix) / total;
      ay += a * g.y(iy) / total;
    }
  }
  double best = moment_about(omega, ax, ay);
  for (int it = 0; it < 200; ++it) {
    double sx = 0.0, sy = 0.0, sw = 0.0;
    for (int ix = 0; ix < g.n(); ++ix) {
      for (int iy = 0; iy < g.n(); ++iy) {
        const double a = std::abs(omega(ix, iy));
        if (a == 0.0) continue;
        const double d = std::max(std::hypot(g.x(ix) - ax, g.y(iy) - ay), 1e-12 * g.dx());
        sx += a * g.x(ix) / d;
        sy += a * g.y(iy) / d;
        sw += a / d;
      }
    }
    const double nx = sx / sw, ny = sy / sw;
    const double m = moment_about(omega, nx, ny);
    const double moved = std::hypot(nx - ax, ny - ay);
    ax = nx;
    ay = ny;
    best = std::min(best, m);
    if (moved < 1e-10 * g.length()) break;
  }
  return best;
}

FourierSplit fourier_split(const SpectralField& omega, double cutoff) {
  if (!(cutoff > 0.0)) throw Error(ErrorCode::invalid_argument, "fourier_split: K must be positive");
  const Grid& g = omega.grid();
  double low = 0.0, high = 0.0;
  for (std::size_t s = 1; s < g.spectral_size(); ++s) {
    const double e = g.weight(s) * std::norm(omega[s]) / g.k2(s);
    if (std::sqrt(g.k2(s)) < cutoff) {
      low += e;
    } else {
      high += e;
    }
  }
  const double l = g.length();
  return {l * std::sqrt(low), l * std::sqrt(high)};
}

MomentReport energy_bound_check(const SpectralField& omega, double tol_domain) {
  const PhysicalField w = inverse(omega);
  const double l1 = abs_mass(w);
  MomentReport r;
  r.tol_domain = tol_domain;
  if (l1 == 0.0) return r;
  if (std::abs(integral(w)) > 1e-12 * l1) {
    std::ostringstream msg;
    msg << "vorticity integral " << integral(w) << " is not zero; the velocity has infinite energy";
    throw Error(ErrorCode::gauge_violation, msg.str());
  }
  r.moment1 = first_moment(w);
  r.moment1_min = first_moment_min(w);
  r.l2_omega = l2_norm(omega);
  r.l2_u = l2_norm(biot_savart(omega));
  r.bound = std::sqrt(r.l2_omega * r.moment1);
  r.bound_min = std::sqrt(r.l2_omega * r.moment1_min);
  r.cutoff_k = std::sqrt(r.l2_omega / r.moment1);
  const FourierSplit split = fourier_split(omega, r.cutoff_k);
  r.low_term = split.low;
  r.high_term = split.high;
  r.low_ok = r.low_term <= r.cutoff_k * r.moment1 * (1 + tol_domain);
  r.high_ok = r.high_term <= r.l2_omega / r.cutoff_k * (1 + tol_domain);
  r.satisfied = r.l2_u < r.bound * (1 + tol_domain);
  return r;
}

CutoffScan scan_cutoff(double l2_omega, double moment1, int count) {
  if (!(l2_omega > 0.0) || !(moment1 > 0.0) || count < 2) {
    throw Error(ErrorCode::invalid_argument, "scan_cutoff: need positive norms and count >= 2");
  }
  CutoffScan s;
  s.formula_k = std::sqrt(l2_omega / moment1);
  const double lo = std::log(s.formula_k / 10), hi = std::log(s.formula_k * 10);
  const double h = (hi - lo) / (count - 1);
  for (int i = 0; i < count; ++i) {
    const double k = std::exp(lo + i * h);
    s.k.push_back(k);
    s.value.push_back(k * moment1 + l2_omega / k);
    if (s.value.back() < s.value[s.argmin]) s.argmin = std::size_t(i);
  }
  s.distance_in_steps = std::abs(std::log(s.k[s.argmin] / s.formula_k)) / h;
  return s;
}

}  // namespace hvbk
