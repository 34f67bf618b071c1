#include "io/initial_conditions.hpp"

#include <cmath>
#include <random>

#include "core/spectral.hpp"

namespace hvbk {

using namespace spectral;

SpectralField random_band_field(const GridPtr& grid, double k_max, double slope, double amplitude,
                                std::uint64_t seed) {
  const Grid& g = *grid;
  SpectralField f(grid);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = g.n();
  for (int ix = 0; ix < n; ++ix) {
    const int jx = g.kx_index(ix);
    for (int jy = 0; jy < g.nky(); ++jy) {
      const std::size_t s = std::size_t(ix) * g.nky() + jy;
      const double re = normal(rng), im = normal(rng);
      const double j = std::hypot(double(jx), double(jy));
      if (j < 1.0 || j > k_max || !g.dealias(s)) continue;
      // On the jy = 0 column only jx > 0 is free; jx < 0 is its conjugate.
      if (jy == 0 && jx < 0) continue;
      f[s] = Complex(re, im) * std::pow(j, -slope);
    }
  }
  for (int ix = 1; ix < n; ++ix) {
    const int jx = g.kx_index(ix);
    if (jx < 0 && -jx < n / 2) f[std::size_t(ix) * g.nky()] = std::conj(f[std::size_t(-jx) * g.nky()]);
  }
  const double rms = l2_norm(f) / g.length();
  if (rms > 0.0) f *= amplitude / rms;
  return f;
}

SpectralField gaussian_dipole_field(const GridPtr& grid, double amplitude, double sigma, double x0,
                                    double y0) {
  if (!(sigma > 0.0)) throw Error(ErrorCode::invalid_argument, "gaussian_dipole: sigma must be positive");
  const Grid& g = *grid;
  const double l = g.length();
  auto wrap = [l](double d) { return d - l * std::round(d / l); };
  PhysicalField w(grid);
  for (int ix = 0; ix < g.n(); ++ix) {
    for (int iy = 0; iy < g.n(); ++iy) {
      const double dx = wrap(g.x(ix) - x0), dy = wrap(g.y(iy) - y0);
      w(ix, iy) = -2 * amplitude * dy * std::exp(-(dx * dx + dy * dy) / (sigma * sigma));
    }
  }
  SpectralField f = dealias(forward(w));
  f[0] = 0.0;
  return f;
}

SpectralField taylor_green_field(const GridPtr& grid, double amplitude) {
  const Grid& g = *grid;
  PhysicalField w(grid);
  for (int ix = 0; ix < g.n(); ++ix) {
    for (int iy = 0; iy < g.n(); ++iy) {
      w(ix, iy) = 2 * amplitude * std::cos(g.k0() * g.x(ix)) * std::cos(g.k0() * g.y(iy));
    }
  }
  SpectralField f = dealias(forward(w));
  f[0] = 0.0;
  return f;
}

TwoFluidState make_initial_condition(const InitSpec& spec, const GridPtr& grid) {
  SpectralField a(grid), b(grid);
  const double c = grid->length() / 2;
  if (spec.kind == "taylor_green") {
    a = taylor_green_field(grid, spec.amplitude);
    b = a;
  } else if (spec.kind == "random_band") {
    a = random_band_field(grid, spec.k_max, spec.slope, spec.amplitude, spec.seed);
    b = random_band_field(grid, spec.k_max, spec.slope, spec.amplitude, spec.seed + 1);
  } else if (spec.kind == "gaussian_dipole") {
    const double sigma = spec.sigma > 0.0 ? spec.sigma : grid->length() / 20;
    a = gaussian_dipole_field(grid, spec.amplitude, sigma, c, c);
    b = a;
  } else if (spec.kind == "counterflow") {
    a = random_band_field(grid, spec.k_max, spec.slope, spec.amplitude, spec.seed);
    b = -1.0 * a;
  } else {
    std::string list;
    for (const auto& k : registered_init_kinds()) list += (list.empty() ? "" : ", ") + k;
    throw Error(ErrorCode::invalid_argument,
                "unknown initial condition '" + spec.kind + "'; registered kinds: " + list);
  }
  if (spec.fluids == "normal") {
    b = SpectralField(grid);
  } else if (spec.fluids == "super") {
    a = SpectralField(grid);
  } else if (spec.fluids != "both") {
    throw Error(ErrorCode::invalid_argument, "init.fluids must be both, normal or super");
  }
  return make_state(0.0, std::move(a), std::move(b));
}

}  // namespace hvbk
