#pragma once

#include <cstdint>

#include "core/model.hpp"
#include "io/config.hpp"

namespace hvbk {

// Zero-mean field with modes 1 <= |j| <= k_max (integer wavenumbers, inside
// the dealiasing mask), complex Gaussian coefficients scaled by |j|^-slope,
// normalized so the RMS vorticity equals `amplitude`. Deterministic for a
// given seed (std::mt19937_64 with the standard library's normal
// distribution).
SpectralField random_band_field(const GridPtr& grid, double k_max, double slope, double amplitude,
                                std::uint64_t seed);

// w = -2A (y - y0) exp(-r^2 / sigma^2) about (x0, y0), minimal-image
// distances, dealiased, mean mode removed.
SpectralField gaussian_dipole_field(const GridPtr& grid, double amplitude, double sigma, double x0,
                                    double y0);

// 2A cos(k0 x) cos(k0 y)
SpectralField taylor_green_field(const GridPtr& grid, double amplitude);

// Kinds: taylor_green, random_band (superfluid uses seed + 1),
// gaussian_dipole (box center, sigma = init.sigma or L/20), counterflow
// (w_s = -w_n). init.fluids selects which fluids are populated.
TwoFluidState make_initial_condition(const InitSpec& spec, const GridPtr& grid);

}  // namespace hvbk
