#include "doctest.h"

#include <cmath>

#include "core/pressure.hpp"
#include "core/timestepping.hpp"
#include "support/fixtures.hpp"

using namespace hvbk;
using namespace hvbk::spectral;

namespace {

double compatibility(const TwoFluidState& s, const PhysParams& p, const PressurePair& pr) {
  const VelocityPair g = velocity_forcing(s.u_n(), s.u_s(), p);
  const double a = l2_norm(divergence(g.n - gradient(pr.p_n))) / std::max(1e-300, l2_norm(g.n));
  const double b = l2_norm(divergence(g.s - gradient(pr.p_s))) / std::max(1e-300, l2_norm(g.s));
  return std::max(a, b);
}

double rate_norm(const VorticityPair& r) {
  return std::max(l2_norm(biot_savart(r.n)), l2_norm(biot_savart(r.s)));
}

}  // namespace

TEST_CASE("rest has zero pressure and zero residual") {
  const auto g = test::grid(16);
  const TwoFluidState s = make_state(0, SpectralField(g), SpectralField(g));
  const PhysParams p = test::coupled();
  const PressurePair pr = solve_pressure(s, p);
  CHECK(l2_norm(pr.p_n) == 0.0);
  CHECK(l2_norm(pr.p_s) == 0.0);
  CHECK(momentum_residual(s, p, pr, rhs_vorticity(s, p)) == 0.0);
  const PressureRhsNorms rhs = pressure_rhs_norms(s, p, 3);
  CHECK(rhs.n == 0.0);
  CHECK(rhs.s == 0.0);
}

TEST_CASE("parallel shear flow needs no pressure") {
  // u = (sin y, 0) has vorticity -cos y.
  const auto g = test::grid(32);
  const SpectralField w = test::spectral(g, [](double, double y) { return -std::cos(y); });
  const TwoFluidState s = make_state(0, w, w);
  const PressurePair pr = solve_pressure(s, PhysParams{});
  CHECK(l2_norm(pr.p_n) < 1e-14);
  CHECK(l2_norm(pr.p_s) < 1e-14);
}

TEST_CASE("Taylor-Green pressure") {
  // u = (-cos x sin y, sin x cos y): (u.grad)u = -(sin 2x, sin 2y)/2 = -grad p
  // with p = -(cos 2x + cos 2y)/4.
  const auto g = test::grid(32);
  const SpectralField w = test::spectral(g, [](double x, double y) { return 2 * std::cos(x) * std::cos(y); });
  const PressurePair pr = solve_pressure(make_state(0, w, w), PhysParams{});
  const SpectralField want =
      test::spectral(g, [](double x, double y) { return -(std::cos(2 * x) + std::cos(2 * y)) / 4; });
  CHECK(l2_norm(pr.p_n - want) < 1e-13);
}

TEST_CASE("pressure restores compatibility") {
  const auto g = test::grid(32);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const TwoFluidState s = test::random_state(g, 300 + seed);
    PhysParams p = test::coupled(0.7, 1.3);
    p.rho_n = 0.4 + 0.1 * seed;
    CHECK(compatibility(s, p, solve_pressure(s, p)) <= 1e-9);
  }
}

TEST_CASE("decoupled pressures ignore the other fluid") {
  const auto g = test::grid(32);
  const TwoFluidState a = test::random_state(g, 1);
  const TwoFluidState b = make_state(0, a.omega_n, a.omega_s + test::random_field(g, 99));
  const PressurePair pa = solve_pressure(a, PhysParams{}), pb = solve_pressure(b, PhysParams{});
  CHECK(l2_norm(pa.p_n - pb.p_n) <= 1e-12 * l2_norm(pa.p_n));
  CHECK(l2_norm(pa.p_s - pb.p_s) > 1e-3 * l2_norm(pa.p_s));
  // With friction the superfluid enters the normal-fluid pressure.
  const PhysParams p = test::coupled(1.0, 1.0);
  CHECK(l2_norm(solve_pressure(a, p).p_n - solve_pressure(b, p).p_n) > 1e-6);
}

TEST_CASE("pressure is insensitive to the streamfunction constant") {
  const auto g = test::grid(32);
  const SpectralField psi = inv_laplacian(test::random_field(g, 5));
  SpectralField shifted = psi;
  shifted[0] = 3.0;
  const SpectralField w1 = -1.0 * laplacian(psi), w2 = -1.0 * laplacian(shifted);
  const PhysParams p = test::coupled();
  const PressurePair a = solve_pressure(make_state(0, w1, w1), p), b = solve_pressure(make_state(0, w2, w2), p);
  CHECK(l2_norm(a.p_n - b.p_n) == 0.0);
  CHECK(a.p_n.mean() == Complex(0.0));
}

TEST_CASE("momentum equations hold with the recovered pressure") {
  const auto g = test::grid(32);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const TwoFluidState s = test::random_state(g, 400 + seed);
    const PhysParams p = test::coupled(1.0, 1.0);
    const VorticityPair r = rhs_vorticity(s, p);
    CHECK(momentum_residual(s, p, solve_pressure(s, p), r) <= 1e-10 * rate_norm(r));
  }
}

TEST_CASE("decoupled Taylor-Green momentum residual after a run") {
  const auto g = test::grid(32);
  const SpectralField w = test::spectral(g, [](double x, double y) { return 2 * std::cos(x) * std::cos(y); });
  IntegratorConfig c;
  c.dt = 1e-3;
  c.t_end = 0.5;
  const TwoFluidState s = run(make_state(0, w, w), PhysParams{}, c, nullptr).final_state;
  const VorticityPair r = rhs_vorticity(s, PhysParams{});
  CHECK(momentum_residual(s, PhysParams{}, solve_pressure(s, PhysParams{}), r) <= 1e-7 * rate_norm(r));
}

TEST_CASE("a wrong pressure shows up in the residual") {
  const auto g = test::grid(32);
  const TwoFluidState s = test::random_state(g, 7);
  const PhysParams p = test::coupled(1.0, 1.0);
  PressurePair pr = solve_pressure(s, p);
  pr.p_n *= 1.01;
  CHECK(momentum_residual(s, p, pr, rhs_vorticity(s, p)) > 1e-4 * rate_norm(rhs_vorticity(s, p)));
}

TEST_CASE("pressure converges spectrally on smooth data") {
  const auto field = [](const GridPtr& g) {
    SpectralField w = dealias(test::spectral(g, [](double x, double y) {
      return std::exp(std::sin(x)) * std::cos(y) - 0.5 * std::exp(std::cos(y)) * std::sin(x + 1.0);
    }));
    w[0] = 0.0;
    return make_state(0, w, 0.5 * w);
  };
  const PhysParams p = test::coupled(0.0, 1.0);
  const PhysicalField ref = inverse(solve_pressure(field(test::grid(128)), p).p_n);
  std::vector<double> err;
  for (int n : {16, 32, 64}) {
    const PhysicalField pn = inverse(solve_pressure(field(test::grid(n)), p).p_n);
    const int stride = 128 / n;
    double e = 0.0;
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) e = std::max(e, std::abs(pn(ix, iy) - ref(ix * stride, iy * stride)));
    }
    err.push_back(e);
  }
  MESSAGE("pressure errors " << err[0] << " " << err[1] << " " << err[2]);
  CHECK(err[1] < err[0] / 10);
  CHECK(err[2] < err[1] / 10);
}
