#pragma once

#include <vector>

#include "core/fields.hpp"

// Kinetic energy of a zero-mean vorticity with finite enstrophy and finite
// first moment:  |u|_2 < |w|_2^{1/2} |x w|_1^{1/2}.
//
// The statement is posed on the plane. On the torus it is checked for fields
// concentrated in the central half of the box, measuring |x| from the box
// center; periodic images make it hold only up to a small tolerance.
namespace hvbk {

// Fraction of int |w| lying outside the central square of side L/2.
double spillover_fraction(const PhysicalField& omega);

// int |x - c| |w| dx with c the box center. Throws precondition when the
// spillover fraction exceeds 1e-6.
double first_moment(const PhysicalField& omega);

// min over a of int |x - a| |w| dx (geometric median of |w|, by Weiszfeld
// iteration). Same precondition.
double first_moment_min(const PhysicalField& omega);

struct FourierSplit {
  double low = 0.0;   // (sum_{0 < |k| < K} |w_k|^2 / |k|^2)^{1/2}, Parseval-scaled
  double high = 0.0;  // same over |k| >= K
};

FourierSplit fourier_split(const SpectralField& omega, double cutoff);

struct MomentReport {
  double l2_omega = 0.0;
  double moment1 = 0.0;      // about the box center
  double moment1_min = 0.0;  // about the minimizing point
  double l2_u = 0.0;
  double bound = 0.0;        // sqrt(l2_omega * moment1)
  double bound_min = 0.0;    // sqrt(l2_omega * moment1_min)
  double cutoff_k = 0.0;     // sqrt(l2_omega / moment1)
  double low_term = 0.0;
  double high_term = 0.0;
  bool low_ok = true;    // low_term <= K moment1 (1 + tol)
  bool high_ok = true;   // high_term <= l2_omega / K (1 + tol)
  bool satisfied = true; // l2_u < bound (1 + tol)
  double tol_domain = 0.05;
};

// Throws gauge_violation when |int w| > 1e-12 |w|_1, precondition when the
// field is not concentrated.
MomentReport energy_bound_check(const SpectralField& omega, double tol_domain = 0.05);

struct CutoffScan {
  std::vector<double> k;
  std::vector<double> value;  // K moment1 + l2_omega / K
  std::size_t argmin = 0;
  double formula_k = 0.0;
  // |log(k[argmin]) - log(formula_k)| in units of the scan step.
  double distance_in_steps = 0.0;
};

// Geometric scan of `count` cutoffs over [formula_k / 10, 10 formula_k].
CutoffScan scan_cutoff(double l2_omega, double moment1, int count = 50);

}  // namespace hvbk
