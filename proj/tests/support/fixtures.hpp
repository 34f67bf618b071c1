#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "core/model.hpp"
#include "core/spectral.hpp"
#include "io/initial_conditions.hpp"

namespace hvbk::test {

inline constexpr double kPi = 3.14159265358979323846;

inline GridPtr grid(int n, double length = 2 * kPi) { return Grid::create(n, length); }

inline PhysicalField sample(const GridPtr& g, const std::function<double(double, double)>& f) {
  PhysicalField out(g);
  for (int ix = 0; ix < g->n(); ++ix) {
    for (int iy = 0; iy < g->n(); ++iy) out(ix, iy) = f(g->x(ix), g->y(iy));
  }
  return out;
}

inline SpectralField spectral(const GridPtr& g, const std::function<double(double, double)>& f) {
  return spectral::forward(sample(g, f));
}

inline double max_abs_diff(const PhysicalField& a, const PhysicalField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const PhysicalField& a) {
  double m = 0.0;
  for (double v : a.values()) m = std::max(m, std::abs(v));
  return m;
}

inline double rel_l2(const SpectralField& a, const SpectralField& b) {
  return spectral::l2_norm(a - b) / spectral::l2_norm(b);
}

// Smooth random zero-mean field, band-limited to |k| <= k_max.
inline SpectralField random_field(const GridPtr& g, std::uint64_t seed, double k_max = 6.0,
                                  double amplitude = 1.0) {
  return random_band_field(g, k_max, 1.0, amplitude, seed);
}

inline TwoFluidState random_state(const GridPtr& g, std::uint64_t seed, double k_max = 6.0,
                                  double amplitude = 1.0) {
  return make_state(0.0, random_field(g, seed, k_max, amplitude),
                    random_field(g, seed + 7919, k_max, amplitude));
}

inline PhysParams coupled(double b = 1.0, double b_prime = 1.0, double nu = 0.01) {
  PhysParams p;
  p.nu_n = p.nu_s = nu;
  p.b = b;
  p.b_prime = b_prime;
  return p;
}

// Random vector field that is not divergence free.
inline SpectralVector random_vector(const GridPtr& g, std::uint64_t seed) {
  return SpectralVector{random_field(g, seed), random_field(g, seed + 1)};
}

}  // namespace hvbk::test

namespace hvbk::test {

// Calibration corpus for the potential-theory constant: band-limited fields
// with k_max cycling through 2..12 and amplitude through 0.5, 1, 2, 4.
inline SpectralField bkm_corpus_field(const GridPtr& g, std::uint64_t seed) {
  const double k_max = 2.0 + double(seed % 11);
  const double amplitude = 0.5 * double(1u << (seed % 4));
  return random_band_field(g, k_max, 1.0, amplitude, seed);
}

}  // namespace hvbk::test

namespace hvbk::test {

// One to three rotated Gaussian dipoles near the box center, each odd about
// its own center, so the sum has zero integral and sits well inside the
// central half of the box.
struct DipoleCloud {
  struct Dipole {
    double a, sigma, x0, y0, theta;
  };
  std::vector<Dipole> dipoles;

  double operator()(double x, double y) const {
    double w = 0.0;
    for (const Dipole& d : dipoles) {
      const double dx = x - d.x0, dy = y - d.y0;
      const double s = dy * std::cos(d.theta) - dx * std::sin(d.theta);
      w += -2 * d.a * s * std::exp(-(dx * dx + dy * dy) / (d.sigma * d.sigma));
    }
    return w;
  }
};

inline DipoleCloud random_dipole_cloud(double length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  DipoleCloud c;
  const int count = 1 + int(seed % 3);
  for (int i = 0; i < count; ++i) {
    DipoleCloud::Dipole d;
    d.a = 0.5 + 1.5 * u(rng);
    d.sigma = length * (1.0 / 30 + (1.0 / 20 - 1.0 / 30) * u(rng));
    d.x0 = length * (0.5 + (u(rng) - 0.5) / 8);
    d.y0 = length * (0.5 + (u(rng) - 0.5) / 8);
    d.theta = 2 * kPi * u(rng);
    c.dipoles.push_back(d);
  }
  return c;
}

// Not dealiased: masking would ring outside the concentration zone.
inline SpectralField dipole_cloud_field(const GridPtr& g, const DipoleCloud& c) {
  SpectralField f = spectral(g, std::cref(c));
  f[0] = 0.0;
  return f;
}

}  // namespace hvbk::test
