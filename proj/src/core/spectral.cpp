#include "core/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hvbk::spectral {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

SpectralField forward(const PhysicalField& f) {
  SpectralField out(f.grid_ptr());
  f.grid().forward(f.values(), out.coefficients());
  return out;
}

PhysicalField inverse(const SpectralField& f) {
  PhysicalField out(f.grid_ptr());
  f.grid().inverse(f.coefficients(), out.values());
  return out;
}

SpectralVector forward(const PhysicalVector& v) {
  require_same_grid(v.x.grid(), v.y.grid(), "forward");
  return {forward(v.x), forward(v.y)};
}

PhysicalVector inverse(const SpectralVector& v) {
  require_same_grid(v.x.grid(), v.y.grid(), "inverse");
  return {inverse(v.x), inverse(v.y)};
}

SpectralField derivative(const SpectralField& f, Derivative which) {
  const Grid& g = f.grid();
  SpectralField out(f.grid_ptr());
  for (std::size_t s = 0; s < f.size(); ++s) {
    switch (which) {
      case Derivative::ddx: out[s] = kI * g.dkx(s) * f[s]; break;
      case Derivative::ddy: out[s] = kI * g.dky(s) * f[s]; break;
      case Derivative::laplacian: out[s] = -g.k2(s) * f[s]; break;
    }
  }
  return out;
}

SpectralVector gradient(const SpectralField& f) { return {ddx(f), ddy(f)}; }

SpectralVector perp_grad(const SpectralField& f) {
  const Grid& g = f.grid();
  SpectralVector out{SpectralField(f.grid_ptr()), SpectralField(f.grid_ptr())};
  for (std::size_t s = 0; s < f.size(); ++s) {
    out.x[s] = kI * g.dky(s) * f[s];
    out.y[s] = -kI * g.dkx(s) * f[s];
  }
  return out;
}

SpectralField curl(const SpectralVector& v) {
  require_same_grid(v.x.grid(), v.y.grid(), "curl");
  const Grid& g = v.grid();
  SpectralField out(v.x.grid_ptr());
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] = kI * (g.dkx(s) * v.y[s] - g.dky(s) * v.x[s]);
  }
  return out;
}

SpectralField divergence(const SpectralVector& v) {
  require_same_grid(v.x.grid(), v.y.grid(), "divergence");
  const Grid& g = v.grid();
  SpectralField out(v.x.grid_ptr());
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] = kI * (g.dkx(s) * v.x[s] + g.dky(s) * v.y[s]);
  }
  return out;
}

bool has_zero_mean(const SpectralField& f, double rel_tol) {
  const double mean_norm = std::abs(f.mean()) * f.grid().length();
  return mean_norm <= rel_tol * l2_norm(f);
}

SpectralField inv_laplacian(const SpectralField& f) {
  if (!has_zero_mean(f, 1e-10)) {
    std::ostringstream msg;
    msg << "inv_laplacian: mean mode " << std::abs(f.mean())
        << " violates the zero-mean gauge";
    throw Error(ErrorCode::gauge_violation, msg.str());
  }
  const Grid& g = f.grid();
  SpectralField out(f.grid_ptr());
  for (std::size_t s = 1; s < f.size(); ++s) out[s] = f[s] / g.k2(s);
  out[0] = 0.0;
  return out;
}

SpectralVector biot_savart(const SpectralField& omega) {
  return perp_grad(inv_laplacian(omega));
}

SpectralVector leray_project(const SpectralVector& v) {
  require_same_grid(v.x.grid(), v.y.grid(), "leray_project");
  const Grid& g = v.grid();
  SpectralVector out = v;
  for (std::size_t s = 0; s < v.x.size(); ++s) {
    const double kx = g.dkx(s), ky = g.dky(s);
    const double kk = kx * kx + ky * ky;
    if (kk == 0.0) continue;
    const Complex proj = (kx * v.x[s] + ky * v.y[s]) / kk;
    out.x[s] -= kx * proj;
    out.y[s] -= ky * proj;
  }
  return out;
}

SpectralField dealias(SpectralField f) {
  const Grid& g = f.grid();
  for (std::size_t s = 0; s < f.size(); ++s) {
    if (!g.dealias(s)) f[s] = 0.0;
  }
  return f;
}

SpectralVector dealias(SpectralVector v) {
  return {dealias(std::move(v.x)), dealias(std::move(v.y))};
}

SpectralField heat_semigroup(const SpectralField& f, double nu_t) {
  const Grid& g = f.grid();
  SpectralField out(f.grid_ptr());
  for (std::size_t s = 0; s < f.size(); ++s) out[s] = std::exp(-nu_t * g.k2(s)) * f[s];
  return out;
}

SpectralVector heat_semigroup(const SpectralVector& v, double nu_t) {
  return {heat_semigroup(v.x, nu_t), heat_semigroup(v.y, nu_t)};
}

double inner(const SpectralField& f, const SpectralField& h) {
  require_same_grid(f.grid(), h.grid(), "inner");
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) {
    acc += g.weight(s) * (f[s].real() * h[s].real() + f[s].imag() * h[s].imag());
  }
  return acc * g.length() * g.length();
}

double inner(const SpectralVector& v, const SpectralVector& w) {
  return inner(v.x, w.x) + inner(v.y, w.y);
}

double l2_norm(const SpectralField& f) { return std::sqrt(std::max(0.0, inner(f, f))); }

double l2_norm(const SpectralVector& v) {
  return std::sqrt(std::max(0.0, inner(v.x, v.x) + inner(v.y, v.y)));
}

double l2_norm(const PhysicalField& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v * v;
  return std::sqrt(acc * f.grid().cell_area());
}

double integral(const PhysicalField& f) {
  double acc = 0.0;
  for (double v : f.values()) acc += v;
  return acc * f.grid().cell_area();
}

double sobolev_norm(const SpectralField& f, double m) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (std::size_t s = 0; s < f.size(); ++s) {
    acc += g.weight(s) * std::pow(1.0 + g.k2(s), m) * std::norm(f[s]);
  }
  return std::sqrt(acc) * g.length();
}

double sobolev_norm(const SpectralVector& v, double m) {
  const double a = sobolev_norm(v.x, m), b = sobolev_norm(v.y, m);
  return std::sqrt(a * a + b * b);
}

double linf_norm(const PhysicalField& f) {
  double m = 0.0;
  for (double v : f.values()) m = std::max(m, std::abs(v));
  return m;
}

double linf_norm(const SpectralField& f, int oversample) {
  if (oversample <= 1) return linf_norm(inverse(f));
  if (oversample != 2) {
    throw Error(ErrorCode::invalid_argument, "linf_norm: oversample must be 1 or 2");
  }
  const Grid& g = f.grid();
  auto fine = Grid::create(2 * g.n(), g.length());
  SpectralField padded(fine);
  const int n = g.n();
  for (int ix = 0; ix < n; ++ix) {
    if (ix == n / 2) continue;
    const int jx = g.kx_index(ix);
    const int fx = jx < 0 ? jx + 2 * n : jx;
    for (int jy = 0; jy < n / 2; ++jy) {
      padded[std::size_t(fx) * fine->nky() + jy] = f[std::size_t(ix) * g.nky() + jy];
    }
  }
  return linf_norm(inverse(padded));
}

}  // namespace hvbk::spectral
