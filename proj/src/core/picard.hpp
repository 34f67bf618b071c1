#pragma once

#include <vector>

#include "core/model.hpp"
#include "core/timestepping.hpp"

// Fixed-point (mild solution) form of the velocity equations:
//   Phi(t) = e^{nu_n t lap} u_n0 + int_0^t e^{nu_n (t - s) lap} P[-(u_n.grad)u_n + (rho_s/rho) F] ds
// and the analogous Psi for the superfluid.
namespace hvbk {

struct PicardConfig {
  double horizon = 0.1;
  int max_iters = 40;
  double tol = 1e-10;       // relative to the data norm
  int quadrature_steps = 64;
  double sobolev_m = 3.0;
  int bisection_rounds = 10;

  void validate() const;
};

// Velocities at quadrature_steps + 1 uniform times on [0, horizon].
using Trajectory = std::vector<VelocityPair>;

// One application of (Phi, Psi) with exact heat semigroups and the trapezoid
// rule for the Duhamel integral.
Trajectory picard_apply(const Trajectory& guess, const VelocityPair& data, const PhysParams& p,
                        const PicardConfig& cfg);

// Heat flow of the data, the iteration's starting point.
Trajectory heat_trajectory(const VelocityPair& data, const PhysParams& p, const PicardConfig& cfg);

// Discrete X norm summed over both fluids:
//   sup_t |v|_{H^m} + nu^{1/2} (int |v|_{H^{m+1}}^2 dt)^{1/2}.
double x_norm(const Trajectory& v, const PhysParams& p, const PicardConfig& cfg);
double x_norm_difference(const Trajectory& a, const Trajectory& b, const PhysParams& p,
                         const PicardConfig& cfg);

struct ContractionResult {
  double factor = 0.0;
  bool converged = false;
  bool degenerate = false;  // zero data
  int iterations = 0;
  std::vector<double> differences;  // |u^{j+1} - u^j|_X
  Trajectory solution;              // last iterate
};

// Iterates from the heat flow. The factor is the largest ratio of successive
// iterate differences, ignoring differences below 1e-12 of the data norm
// (round-off). Divergent iterations report a factor >= 1, not an exception.
ContractionResult contraction_factor(const VelocityPair& data, const PhysParams& p,
                                     const PicardConfig& cfg);

struct ExistenceProbe {
  double t_star = 0.0;  // largest horizon found with factor < 1
  double t_fail = 0.0;  // smallest horizon found with factor >= 1 (0 if none)
  double data_norm = 0.0;  // |u_n0|_{H^m} + |u_s0|_{H^m}
  bool capped = false;  // factor < 1 already at cfg.horizon
};

// Bracketing by halving from cfg.horizon, then geometric bisection.
ExistenceProbe existence_time_probe(const VelocityPair& data, const PhysParams& p,
                                    const PicardConfig& cfg);

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct LipschitzProbe {
  double ratio = 0.0;
  bool degenerate = false;  // identical data
};

// Integrates both states to t with a fixed step and returns
// sup_t |sol1 - sol2|_{H^m} / |data1 - data2|_{H^m} on the velocities.
LipschitzProbe lipschitz_data_probe(const TwoFluidState& data1, const TwoFluidState& data2,
                                    const PhysParams& p, double t, double dt, double sobolev_m);

VelocityPair velocities(const TwoFluidState& s);

}  // namespace hvbk
