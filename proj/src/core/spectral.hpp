#pragma once

#include "core/fields.hpp"

// Transforms and exact spectral operators on the periodic grid. All functions
// are pure; inputs are never modified.
namespace hvbk::spectral {

SpectralField forward(const PhysicalField& f);
PhysicalField inverse(const SpectralField& f);
SpectralVector forward(const PhysicalVector& v);
PhysicalVector inverse(const SpectralVector& v);

enum class Derivative { ddx, ddy, laplacian };

SpectralField derivative(const SpectralField& f, Derivative which);
inline SpectralField ddx(const SpectralField& f) { return derivative(f, Derivative::ddx); }
inline SpectralField ddy(const SpectralField& f) { return derivative(f, Derivative::ddy); }
inline SpectralField laplacian(const SpectralField& f) { return derivative(f, Derivative::laplacian); }

SpectralVector gradient(const SpectralField& f);
// (d/dy f, -d/dx f), so that curl(perp_grad f) = -laplacian f.
SpectralVector perp_grad(const SpectralField& f);
// d/dx v_y - d/dy v_x
SpectralField curl(const SpectralVector& v);
SpectralField divergence(const SpectralVector& v);

// g with laplacian(g) = -f and exactly zero mean. Throws gauge_violation if
// the mean of f exceeds 1e-10 of its L2 norm.
SpectralField inv_laplacian(const SpectralField& f);

// Velocity of a zero-mean vorticity: perp_grad(inv_laplacian(omega)).
SpectralVector biot_savart(const SpectralField& omega);

// v - grad(inv_lap(div v)) mode by mode.
SpectralVector leray_project(const SpectralVector& v);

// Zero every mode outside the two-thirds mask.
SpectralField dealias(SpectralField f);
SpectralVector dealias(SpectralVector v);

// exp(nu_t * laplacian) f
SpectralField heat_semigroup(const SpectralField& f, double nu_t);
SpectralVector heat_semigroup(const SpectralVector& v, double nu_t);

// Norms. Spectral versions use Parseval; the physical version is the
// collocation quadrature.
double l2_norm(const SpectralField& f);
double l2_norm(const SpectralVector& v);
double l2_norm(const PhysicalField& f);
// Real L2 inner product over the box.
double inner(const SpectralField& f, const SpectralField& g);
double inner(const SpectralVector& v, const SpectralVector& w);
double integral(const PhysicalField& f);

// (sum_k (1 + |k|^2)^m |c_k|^2)^(1/2), scaled to match the L2 norm at m = 0.
double sobolev_norm(const SpectralField& f, double m);
double sobolev_norm(const SpectralVector& v, double m);

// Maximum of |f| on the collocation points, or on a 2x zero-padded grid when
// oversample == 2 (the collocation value is a lower bound of the true sup).
double linf_norm(const SpectralField& f, int oversample = 1);
double linf_norm(const PhysicalField& f);

// Largest mean-mode magnitude relative to the field's L2 norm.
bool has_zero_mean(const SpectralField& f, double rel_tol);

}  // namespace hvbk::spectral
