#include "cobotplan/trajectory.hpp"

#include <cstring>

#include <catch2/catch_amalgamated.hpp>

#include "cobotplan/demo_paths.hpp"
#include "cobotplan/time_scaling.hpp"

using namespace cobotplan;

TEST_CASE("time scaling boundary values and symmetry") {
  for (int steps : {1, 2, 10, 50}) {
    CHECK(time_scale(0, steps) == 0.0);
    CHECK(time_scale(steps, steps) == 1.0);
  }
  CHECK(time_scale(5, 10) == 0.5);
  CHECK(time_scale(25, 50) == 0.5);
  CHECK(quintic_smoothstep(0.5) == 0.5);

  // symmetry about the midpoint
  for (int t = 0; t <= 10; ++t)
    CHECK(time_scale(t, 10) ==
          Catch::Approx(1.0 - time_scale(10 - t, 10)).margin(1e-14));
}

TEST_CASE("time scaling has no velocity or acceleration at the ends") {
  // centered stencils on the raw polynomial, which is defined on all of R
  const double h = 1e-4;
  auto d1 = [&](double u) {
    return (quintic_smoothstep(u + h) - quintic_smoothstep(u - h)) / (2 * h);
  };
  auto d2 = [&](double u) {
    return (quintic_smoothstep(u + h) - 2 * quintic_smoothstep(u) +
            quintic_smoothstep(u - h)) /
           (h * h);
  };
  CHECK(std::abs(d1(0.0)) < 1e-6);
  CHECK(std::abs(d1(1.0)) < 1e-6);
  CHECK(std::abs(d2(0.0)) < 1e-6);
  CHECK(std::abs(d2(1.0)) < 1e-6);
}

TEST_CASE("time scaling argument checks") {
  CHECK_THROWS_AS(time_scale(-1, 10), std::out_of_range);
  CHECK_THROWS_AS(time_scale(11, 10), std::out_of_range);
  CHECK_THROWS_AS(time_scale(0, 0), std::invalid_argument);
}

TEST_CASE("time scaling is strictly increasing within a segment") {
  for (int steps : {2, 7, 50}) {
    double prev = time_scale(0, steps);
    for (int t = 1; t <= steps; ++t) {
      const double s = time_scale(t, steps);
      CHECK(s > prev);
      prev = s;
    }
  }
}

TEST_CASE("demo path 1 plans throughout") {
  PlanOptions opt;
  opt.steps = 10;
  const PlanResult res = plan_trajectory(demo_path(1), opt);
  REQUIRE(res.ok());
  CHECK(res.prescan_issues.empty());
  REQUIRE(res.plan.samples.size() == 31);  // N*T + 1
  for (const TrajectorySample& s : res.plan.samples) {
    CHECK(s.solutions.feasible);
    CHECK(s.solutions.solutions.size() == 4);
  }

  // first sample is the initial waypoint, last is the final one
  CHECK(res.plan.samples.front().position == demo_path(1).front());
  CHECK((res.plan.samples.back().position - demo_path(1).back()).max_abs() <
        1e-9);

  // stored positions re-evaluate bitwise
  for (const TrajectorySample& s : res.plan.samples) {
    const Vec3 again = res.plan.curve.eval(s.segment, s.s);
    CHECK(std::memcmp(&again, &s.position, sizeof(Vec3)) == 0);
  }
}

TEST_CASE("demo path 6 fails mid-path with the failing sample reported") {
  PlanOptions opt;
  opt.steps = 10;
  const PlanResult res = plan_trajectory(demo_path(6), opt);
  REQUIRE_FALSE(res.ok());
  CHECK_FALSE(res.failure->at_initial_point);
  CHECK(res.failure->step >= 1);
  CHECK_FALSE(res.prescan_issues.empty());

  // every retained sample is feasible; the plan stops at the failure
  for (const TrajectorySample& s : res.plan.samples)
    CHECK(s.solutions.feasible);
}

TEST_CASE("continue-on-infeasible keeps all samples for diagnostics") {
  PlanOptions opt;
  opt.steps = 10;
  opt.fail_fast = false;
  const PlanResult res = plan_trajectory(demo_path(6), opt);
  REQUIRE_FALSE(res.ok());
  CHECK(res.plan.samples.size() == 31);
  std::size_t infeasible = 0;
  for (const TrajectorySample& s : res.plan.samples)
    if (!s.solutions.feasible) ++infeasible;
  CHECK(infeasible > 0);

  // the recorded failure is the first infeasible sample
  const PlanFailure& f = *res.failure;
  for (const TrajectorySample& s : res.plan.samples) {
    if (!s.solutions.feasible) {
      CHECK(s.segment == f.segment);
      CHECK(s.step == f.step);
      break;
    }
  }
}

TEST_CASE("infeasible initial point aborts before segment work") {
  const Waypoints bad = {{0, 0, 100}, {100, 100, 100}};
  const PlanResult res = plan_trajectory(bad, PlanOptions{});
  REQUIRE_FALSE(res.ok());
  CHECK(res.failure->at_initial_point);
  CHECK(res.plan.samples.empty());
}

TEST_CASE("degenerate two-point path at a reachable point") {
  const Vec3 p = forward_kinematics(JointConfig::from_angles(0.3, -0.5, 0.8));
  PlanOptions opt;
  opt.steps = 1;
  const PlanResult res = plan_trajectory({p, p}, opt);
  REQUIRE(res.ok());
  REQUIRE(res.plan.samples.size() == 2);
  for (const TrajectorySample& s : res.plan.samples)
    CHECK(s.solutions.feasible);
}

TEST_CASE("whole-curve sampling splits the curve evenly") {
  PlanOptions opt;
  opt.steps = 15;
  opt.mode = SamplingMode::whole_curve_count;
  const PlanResult res = plan_trajectory(demo_path(1), opt);
  REQUIRE(res.ok());
  REQUIRE(res.plan.samples.size() == 15);
  CHECK(res.plan.samples.front().position == demo_path(1).front());
  CHECK((res.plan.samples.back().position - demo_path(1).back()).max_abs() <
        1e-9);

  // global parameters are evenly spaced
  for (std::size_t i = 0; i < res.plan.samples.size(); ++i) {
    const TrajectorySample& s = res.plan.samples[i];
    const double global = static_cast<double>(s.segment) + s.s;
    CHECK(global == Catch::Approx(3.0 * i / 14.0).margin(1e-12));
  }
}

TEST_CASE("parallel solving matches the sequential plan") {
  PlanOptions seq;
  seq.steps = 10;
  PlanOptions par = seq;
  par.parallel = true;

  const PlanResult a = plan_trajectory(demo_path(2), seq);
  const PlanResult b = plan_trajectory(demo_path(2), par);
  REQUIRE(a.ok());
  REQUIRE(b.ok());
  REQUIRE(a.plan.samples.size() == b.plan.samples.size());
  for (std::size_t i = 0; i < a.plan.samples.size(); ++i) {
    const auto& sa = a.plan.samples[i];
    const auto& sb = b.plan.samples[i];
    CHECK(sa.position == sb.position);
    REQUIRE(sa.solutions.solutions.size() == sb.solutions.solutions.size());
    for (std::size_t k = 0; k < sa.solutions.solutions.size(); ++k)
      CHECK(std::memcmp(&sa.solutions.solutions[k], &sb.solutions.solutions[k],
                        sizeof(JointConfig)) == 0);
  }
}

TEST_CASE("parallel fail-fast truncates at the same sample") {
  PlanOptions seq;
  seq.steps = 10;
  PlanOptions par = seq;
  par.parallel = true;

  const PlanResult a = plan_trajectory(demo_path(6), seq);
  const PlanResult b = plan_trajectory(demo_path(6), par);
  REQUIRE_FALSE(a.ok());
  REQUIRE_FALSE(b.ok());
  CHECK(a.failure->segment == b.failure->segment);
  CHECK(a.failure->step == b.failure->step);
  CHECK(a.plan.samples.size() == b.plan.samples.size());
}
