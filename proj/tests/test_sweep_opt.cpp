#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "stpulse/sweep_opt.hpp"
#include "test_util.hpp"

using namespace stpulse;
using namespace stpulse::constants;

namespace {

DeviceParams caption_params() {
  return DeviceParams::make(0.1, -0.44, 3.67, 2.5e-7, 0.5, 0.4);
}

DesignSpec example1_spec() {
  return DesignSpec{TransferMode::to_target, {0.0, 0.0}, pi / 3, BranchSign::plus, 1};
}

Pulse example1_pulse(int steps = 4000) {
  return synthesize_pulse_steps(design_protocol(example1_spec(), caption_params()), steps);
}

}  // namespace

TEST_CASE("peak field regression value for the first worked transfer") {
  CHECK(e_max(example1_pulse()) ==
        doctest::Approx(2453.6749599864957).epsilon(1e-9));
}

TEST_CASE("peak field is stable under grid refinement") {
  const double coarse = e_max(example1_pulse(4000));
  const double fine = e_max(example1_pulse(8000));
  CHECK(std::abs(fine - coarse) / coarse <= 1e-3);
}

TEST_CASE("doubling the dresselhaus strength halves the field") {
  const DeviceParams p = caption_params();
  const DeviceParams p2 = DeviceParams::make(
      p.j_mev, p.g_factor, p.b_tesla, 2.0 * p.hbar_beta_mev_cm,
      p.alpha_over_beta, p.t_f_ns);
  const double base = e_max(example1_pulse());
  const double halved =
      e_max(synthesize_pulse_steps(design_protocol(example1_spec(), p2), 4000));
  CHECK(halved == doctest::Approx(0.5 * base).epsilon(1e-12));
}

TEST_CASE("a motionless protocol needs no field at all") {
  // Choose B so J + Delta = 0; then theta_a and g can both stay frozen and
  // the gauge bracket is identically zero.
  const double b_cancel = 0.1 / (0.44 * mu_bohr);
  const DeviceParams p = DeviceParams::make(0.1, -0.44, b_cancel, 2.5e-7, 0.5, 0.4);
  REQUIRE(std::abs(p.detuning_rate()) <= 1e-12);
  AnsatzSolution frozen;
  frozen.a = {pi / 3, 0.0, 0.0};
  frozen.b = {0.0, 0.0, 0.0};
  frozen.u_target = 0.0;
  frozen.spec = DesignSpec{TransferMode::to_target, {pi / 3, 0.0}, pi / 3, BranchSign::plus, 0};
  frozen.params = p;
  const Pulse pulse = synthesize_pulse_steps(frozen, 1000);
  CHECK(e_max(pulse) == 0.0);
}

TEST_CASE("winding choice changes the field budget and is reported") {
  const DeviceParams p = caption_params();
  struct Known { int k; BranchSign branch; double e; };
  const Known table[] = {
      {-2, BranchSign::plus, 3180.5104628427266},
      {-1, BranchSign::plus, 1004.1627951083507},
      {1, BranchSign::plus, 2453.6749599864957},
      {2, BranchSign::plus, 4249.744134537118},
      {1, BranchSign::minus, 569.4886447892006},
  };
  std::set<double> seen;
  for (const Known& row : table) {
    DesignSpec spec = example1_spec();
    spec.winding_k = row.k;
    spec.branch = row.branch;
    const double e = e_max(synthesize_pulse_steps(design_protocol(spec, p), 4000));
    CHECK(e == doctest::Approx(row.e).epsilon(1e-9));
    seen.insert(e);
  }
  CHECK(seen.size() == 5);  // all budgets distinct
}

TEST_CASE("sweep rejects malformed ranges") {
  const DeviceParams p = caption_params();
  CHECK_THROWS_AS(sweep_theta0(example1_spec(), p, 0.1 * pi, 0.9 * pi, 2), ConfigError);
  CHECK_THROWS_AS(sweep_theta0(example1_spec(), p, 0.9 * pi, 0.1 * pi, 9), ConfigError);
  CHECK_THROWS_AS(sweep_theta0(example1_spec(), p, 0.0, 0.9 * pi, 9), ConfigError);
  CHECK_THROWS_AS(sweep_theta0(example1_spec(), p, 0.1 * pi, pi, 9), ConfigError);
}

TEST_CASE("sweep grid for the first worked transfer") {
  const DeviceParams p = caption_params();
  SweepOptions opt;
  opt.pulse_steps = 1000;  // cheap grid is enough for feasibility
  const SweepResult result = sweep_theta0(example1_spec(), p, 0.1 * pi, 0.9 * pi, 17, opt);
  REQUIRE(result.grid.size() == 17);
  CHECK(result.grid.front().theta_a0 == doctest::Approx(0.1 * pi).epsilon(1e-15));
  CHECK(result.grid.back().theta_a0 == doctest::Approx(0.9 * pi).epsilon(1e-15));
  for (const SweepPoint& pt : result.grid) {
    CHECK(pt.feasible);
    CHECK(std::isfinite(pt.e_max_mv_cm));
  }
  // best() is the feasible argmin and sits strictly inside the range
  for (const SweepPoint& pt : result.grid)
    CHECK(result.best().e_max_mv_cm <= pt.e_max_mv_cm);
  CHECK(result.best_index > 0);
  CHECK(result.best_index < result.grid.size() - 1);
}

TEST_CASE("coarse and refined grids pick compatible minima") {
  const DeviceParams p = caption_params();
  SweepOptions opt;
  opt.pulse_steps = 1000;
  const SweepResult coarse = sweep_theta0(example1_spec(), p, 0.1 * pi, 0.9 * pi, 9, opt);
  const SweepResult fine = sweep_theta0(example1_spec(), p, 0.1 * pi, 0.9 * pi, 17, opt);
  const double spacing = 0.8 * pi / 8.0;
  CHECK(std::abs(coarse.best().theta_a0 - fine.best().theta_a0) <= spacing + 1e-12);
}

TEST_CASE("infeasible points are kept, flagged and excluded from best") {
  const DeviceParams p = caption_params();
  const DesignSpec hard{TransferMode::from_initial, {pi / 2, 1.3}, pi / 6, BranchSign::plus, -1};
  SweepOptions opt;
  opt.pulse_steps = 1000;
  const SweepResult result = sweep_theta0(hard, p, 0.1 * pi, 0.9 * pi, 9, opt);
  int infeasible = 0;
  for (const SweepPoint& pt : result.grid) {
    if (!pt.feasible) {
      ++infeasible;
      CHECK(std::isnan(pt.e_max_mv_cm));
    }
  }
  CHECK(infeasible == 2);
  CHECK(result.best().feasible);
}

TEST_CASE("a sweep with no feasible point reports infeasibility") {
  const DeviceParams p = caption_params();
  // from_initial with a shallow final azimuth: unsolvable across the range
  const DesignSpec hopeless{TransferMode::from_initial, {0.0, 0.1}, pi / 3, BranchSign::plus, 1};
  CHECK_THROWS_AS(sweep_theta0(hopeless, p, 0.1 * pi, 0.9 * pi, 5), InfeasibleError);
}

TEST_CASE("golden section finds a quadratic minimum") {
  double fmin = 0.0;
  const double x = golden_section_min(
      [](double v) { return (v - 1.3) * (v - 1.3) + 2.0; }, 0.0, 2.0, 1e-7, &fmin);
  CHECK(x == doctest::Approx(1.3).epsilon(1e-6));
  CHECK(fmin == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("golden section on a flat objective returns the bracket midpoint") {
  const double x = golden_section_min([](double) { return 7.0; }, 1.0, 3.0, 1e-9);
  CHECK(x == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("refinement never loses to the discrete minimum") {
  const DeviceParams p = caption_params();
  SweepOptions opt;
  opt.pulse_steps = 1000;
  const SweepResult result = sweep_theta0(example1_spec(), p, 0.1 * pi, 0.9 * pi, 9, opt);
  const RefinedMin refined = refine_min(result, 1e-3);
  CHECK(refined.refined);
  CHECK(refined.e_max_mv_cm <= result.best().e_max_mv_cm);
  CHECK(std::abs(refined.theta_a0 - result.best().theta_a0) <= 0.8 * pi / 8.0);
}

TEST_CASE("a tolerance wider than the bracket keeps the discrete best") {
  const DeviceParams p = caption_params();
  SweepOptions opt;
  opt.pulse_steps = 1000;
  const SweepResult result = sweep_theta0(example1_spec(), p, 0.1 * pi, 0.9 * pi, 9, opt);
  const RefinedMin kept = refine_min(result, 1.0);
  CHECK_FALSE(kept.refined);
  CHECK(kept.theta_a0 == result.best().theta_a0);
  CHECK(kept.e_max_mv_cm == result.best().e_max_mv_cm);
}
