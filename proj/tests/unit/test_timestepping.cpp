#include "doctest.h"

#include <cmath>

#include "core/errors.hpp"
#include "core/timestepping.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hvbk;
using namespace hvbk::spectral;
using hvbk::test::kPi;

namespace {

TwoFluidState integrate(TwoFluidState s, const PhysParams& p, double dt, int steps) {
  for (int i = 0; i < steps; ++i) s = step(s, p, dt);
  return s;
}

double state_error(const TwoFluidState& a, const TwoFluidState& b) {
  return l2_norm(a.omega_n - b.omega_n) + l2_norm(a.omega_s - b.omega_s);
}

IntegratorConfig fixed(double dt, double t_end, int every = 1) {
  IntegratorConfig c;
  c.dt = dt;
  c.t_end = t_end;
  c.output_every = every;
  return c;
}

}  // namespace

TEST_CASE("decoupled Taylor-Green follows the exact decay") {
  const auto g = test::grid(32);
  const SpectralField w = test::spectral(g, [](double x, double y) { return oracle::taylor_green(x, y, 1, 0, 0); });
  PhysParams p;
  p.nu_n = p.nu_s = 0.01;
  const TwoFluidState end = integrate(make_state(0, w, w), p, 1e-3, 200);
  CHECK(end.t == doctest::Approx(0.2));
  const SpectralField exact =
      test::spectral(g, [](double x, double y) { return oracle::taylor_green(x, y, 1, 0.01, 0.2); });
  CHECK(test::rel_l2(end.omega_n, exact) <= 1e-8);
  CHECK(test::rel_l2(end.omega_s, exact) <= 1e-8);
}

TEST_CASE("identical fluids stay identical") {
  const auto g = test::grid(32);
  const SpectralField w = test::random_field(g, 17, 6.0, 0.5);
  TwoFluidState s = make_state(0, w, w);
  const PhysParams p = test::coupled(1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    s = step(s, p, 1e-2);
    CHECK(linf_norm(s.omega_n - s.omega_s) <= 1e-12);
  }
}

namespace {

std::vector<double> temporal_orders(const PhysParams& p) {
  const auto g = test::grid(32);
  const TwoFluidState s0 = test::random_state(g, 3, 5.0, 1.0);
  const double t = 0.4;
  const TwoFluidState ref = integrate(s0, p, t / 320, 320);
  std::vector<double> errs;
  for (int n : {10, 20, 40}) errs.push_back(state_error(integrate(s0, p, t / n, n), ref));
  return {std::log2(errs[0] / errs[1]), std::log2(errs[1] / errs[2])};
}

}  // namespace

TEST_CASE("step is fourth order in time for smooth right-hand sides") {
  SUBCASE("transverse friction only") {
    for (double q : temporal_orders(test::coupled(0.0, 1.0, 0.02))) CHECK(q == doctest::Approx(4.0).epsilon(0.05));
  }
  SUBCASE("drag with smoothed |w_s|") {
    PhysParams p = test::coupled(1.0, 1.0, 0.02);
    p.abs_smoothing_eps = 0.1;
    for (double q : temporal_orders(p)) CHECK(q == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("exact |w_s| drag reduces the temporal order") {
  // The drag is only Lipschitz in w_s; zero crossings cost two orders.
  const std::vector<double> q = temporal_orders(test::coupled(1.0, 1.0, 0.02));
  MESSAGE("orders with exact |w_s|: " << q[0] << ", " << q[1]);
  for (double v : q) {
    CHECK(v > 1.8);
    CHECK(v < 3.0);
  }
}

TEST_CASE("step preserves zero mean and advances time") {
  const auto g = test::grid(16);
  const TwoFluidState s = step(test::random_state(g, 2), test::coupled(), 0.01);
  CHECK(s.omega_n.mean() == Complex(0.0));
  CHECK(s.omega_s.mean() == Complex(0.0));
  CHECK(s.t == 0.01);
  CHECK_THROWS_AS(step(s, test::coupled(), 0.0), Error);
}

TEST_CASE("blowup carries the last valid time") {
  const auto g = test::grid(16);
  TwoFluidState s = test::random_state(g, 2, 6.0, 5e11);
  s.t = 0.25;
  try {
    step(s, test::coupled(), 0.1);
    FAIL("expected blowup");
  } catch (const BlowupError& e) {
    CHECK(e.code() == ErrorCode::blowup);
    CHECK(e.last_valid_time() == 0.25);
  }
}

TEST_CASE("cfl_dt") {
  const auto g64 = test::grid(64);
  const TwoFluidState rest = make_state(0, SpectralField(g64), SpectralField(g64));
  CHECK(cfl_dt(rest, 0.5) == doctest::Approx(0.5 * g64->dx() / 1e-8));

  // sin(x) vorticity gives u = (0, -cos x), so |u|_inf = 1; scale to 2.
  const SpectralField w = test::spectral(g64, [](double x, double) { return 2 * std::sin(x); });
  const TwoFluidState s = make_state(0, w, SpectralField(g64));
  CHECK(cfl_dt(s, 0.5) == doctest::Approx(0.5 * (2 * kPi / 64) / 2).epsilon(1e-12));

  const auto g128 = test::grid(128);
  const SpectralField w2 = test::spectral(g128, [](double x, double) { return 2 * std::sin(x); });
  CHECK(cfl_dt(make_state(0, w2, SpectralField(g128)), 0.5) ==
        doctest::Approx(cfl_dt(s, 0.5) / 2).epsilon(1e-12));
}

TEST_CASE("run with zero duration emits only the initial record") {
  const auto g = test::grid(16);
  RecordingSink sink;
  const RunReport r = run(test::random_state(g, 1), test::coupled(), fixed(0.01, 0.0), &sink);
  CHECK(r.steps == 0);
  CHECK(sink.records.size() == 1);
  CHECK(sink.records[0].t == 0.0);
}

TEST_CASE("run cadence and final record") {
  const auto g = test::grid(16);
  RecordingSink sink;
  const RunReport r = run(test::random_state(g, 1), test::coupled(), fixed(0.01, 0.095, 3), &sink);
  CHECK(r.steps == 10);
  CHECK(r.final_state.t == doctest::Approx(0.095));
  // Step 0, steps 3, 6, 9 and the final step 10.
  REQUIRE(sink.records.size() == 5);
  CHECK(sink.records.back().t == doctest::Approx(0.095));
}

TEST_CASE("runs are deterministic") {
  const auto g = test::grid(32);
  const TwoFluidState s = test::random_state(g, 5);
  RecordingSink a, b;
  run(s, test::coupled(), fixed(0.01, 0.2), &a);
  run(s, test::coupled(), fixed(0.01, 0.2), &b);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].energy == b.records[i].energy);
    CHECK(a.records[i].enstrophy == b.records[i].enstrophy);
    CHECK(a.records[i].bkm_integral == b.records[i].bkm_integral);
  }
}

TEST_CASE("energy is nonincreasing and momentum is conserved") {
  const auto g = test::grid(32);
  RecordingSink sink;
  const RunReport r = run(test::random_state(g, 8, 4.0, 0.3), test::coupled(1.0, 1.0), fixed(2e-3, 0.5), &sink);
  CHECK(r.max_energy_increase <= 1e-10);
  for (std::size_t i = 1; i < sink.records.size(); ++i) {
    CHECK(sink.records[i].energy <= sink.records[i - 1].energy + 1e-10);
    CHECK(std::abs(sink.records[i].momentum_x - sink.records[0].momentum_x) <= 1e-13);
    CHECK(std::abs(sink.records[i].momentum_y - sink.records[0].momentum_y) <= 1e-13);
  }
  CHECK(r.max_residual_energy <= 1e-6);
}

// The residual compares the energy change with the two-record mean of the
// dissipation, so the trapezoid error (second order) dominates.
TEST_CASE("energy residual shrinks at least quadratically with dt") {
  const auto g = test::grid(32);
  const TwoFluidState s = test::random_state(g, 8, 4.0, 0.5);
  PhysParams p = test::coupled(1.0, 1.0);
  p.abs_smoothing_eps = 0.1;
  std::vector<double> res;
  for (double dt : {8e-3, 4e-3, 2e-3}) {
    RecordingSink sink;
    res.push_back(run(s, p, fixed(dt, 0.08), &sink).max_residual_energy);
  }
  MESSAGE("energy residuals " << res[0] << " " << res[1] << " " << res[2]);
  CHECK(res[0] / res[1] >= 3.5);
  CHECK(res[1] / res[2] >= 3.5);
}

TEST_CASE("integrator config validation") {
  IntegratorConfig c;
  c.t_end = 1;
  CHECK_THROWS_AS(c.validate(), Error);  // neither dt nor cfl
  c.cfl = 1.5;
  CHECK_THROWS_AS(c.validate(), Error);
  c.cfl = 0.5;
  CHECK_NOTHROW(c.validate());
  c.t_end = -1;
  CHECK_THROWS_AS(c.validate(), Error);
}

TEST_CASE("cfl-driven run reaches t_end exactly") {
  const auto g = test::grid(16);
  IntegratorConfig c;
  c.cfl = 0.5;
  c.t_end = 0.3;
  const RunReport r = run(test::random_state(g, 1), test::coupled(), c, nullptr);
  CHECK(r.final_state.t == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.steps > 0);
}
