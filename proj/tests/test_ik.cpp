#include "cobotplan/ik.hpp"

#include <cmath>
#include <cstring>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace cobotplan;

namespace {

JointConfig random_config(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  return JointConfig::from_angles(angle(rng), angle(rng), angle(rng));
}

bool contains_close(const IKSolutionSet& set, const JointConfig& q,
                    double tol) {
  for (const JointConfig& s : set.solutions)
    if (max_angle_diff(s, q) <= tol) return true;
  return false;
}

// Count must agree exactly and the two lists must match one-to-one within
// 1e-6 (order-free: ulp noise in equal-theta1 groups may order them
// differently).
void check_against_oracle(const Vec3& target) {
  const IKSolutionSet set = solve_ik(target);
  const auto roots = oracle::IkGridOracle::instance().solutions(target);
  REQUIRE(set.solutions.size() == roots.size());
  std::vector<bool> used(roots.size(), false);
  for (const JointConfig& s : set.solutions) {
    bool matched = false;
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (used[i]) continue;
      const double diff = std::max({std::abs(s.theta1 - roots[i][0]),
                                    std::abs(s.theta3 - roots[i][1]),
                                    std::abs(s.theta4 - roots[i][2])});
      if (diff < 1e-6) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    CHECK(matched);
  }
  CHECK(set.feasible == !roots.empty());
}

}  // namespace

TEST_CASE("reference target from the home configuration") {
  const Vec3 target{66.39, 43.6, 411.14};
  const IKSolutionSet set = solve_ik(target);
  REQUIRE(set.feasible);
  CHECK(contains_close(set, JointConfig::from_angles(0, 0, 0), 1e-6));
  for (const JointConfig& q : set.solutions) {
    CHECK(max_abs_residual(fk_residuals(q, target)) <= 1e-6);
    CHECK((forward_kinematics(q) - target).max_abs() < 1e-6);
  }
  check_against_oracle(target);
}

TEST_CASE("origin and far-away targets are infeasible") {
  const IKSolutionSet origin = solve_ik(Vec3{0, 0, 0});
  CHECK_FALSE(origin.feasible);
  CHECK(origin.solutions.empty());
  CHECK_FALSE(feasible(Vec3{0, 0, 0}));

  CHECK_FALSE(feasible(Vec3{10000, 0, 0}));
  CHECK(feasible(Vec3{66.39, 43.6, 411.14}));

  // The grid oracle agrees that nothing exists at the origin.
  CHECK(oracle::IkGridOracle::instance().solutions(Vec3{0, 0, 0}).empty());
}

TEST_CASE("first demo waypoint carries four verified solutions") {
  const Vec3 target{-100, -100, 100};
  const IKSolutionSet set = solve_ik(target);
  REQUIRE(set.feasible);
  CHECK(set.solutions.size() == 4);
  CHECK_FALSE(set.boundary);
  for (const JointConfig& q : set.solutions)
    CHECK(max_abs_residual(fk_residuals(q, target)) <= 1e-6);
  check_against_oracle(target);
}

TEST_CASE("reachability diagnostics") {
  SECTION("inside the base circle") {
    const Reachability rc = reachability_condition(Vec3{0, 0, 100});
    CHECK_FALSE(rc.circle_ok);
    CHECK_FALSE(rc.ok());
  }
  SECTION("reachable reference points pass every condition") {
    for (const Vec3& t : {Vec3{66.39, 43.6, 411.14}, Vec3{-100, -100, 100}}) {
      const Reachability rc = reachability_condition(t);
      CHECK(rc.circle_ok);
      CHECK(rc.annulus_lower_ok);
      CHECK(rc.annulus_upper_ok);
      CHECK(rc.ok());
    }
  }
  SECTION("far target fails the outer annulus") {
    const Reachability rc = reachability_condition(Vec3{10000, 0, 0});
    CHECK_FALSE(rc.annulus_upper_ok);
  }
  SECTION("solver agrees with the conditions on random targets") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coord(-350.0, 350.0);
    for (int i = 0; i < 3000; ++i) {
      const Vec3 t{coord(rng), coord(rng), coord(rng)};
      CHECK(reachability_condition(t).ok() == solve_ik(t).feasible);
    }
  }
}

TEST_CASE("round trip recovers the original configuration") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 1000; ++i) {
    const JointConfig q = random_config(rng);
    const Vec3 target = forward_kinematics(q);
    const IKSolutionSet set = solve_ik(target);
    REQUIRE(set.feasible);
    CHECK(contains_close(set, q, 1e-6));
    for (const JointConfig& s : set.solutions)
      CHECK((forward_kinematics(s) - target).max_abs() < 1e-6);
  }
}

TEST_CASE("solutions are sorted, distinct and deterministic") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> coord(-300.0, 300.0);
  for (int i = 0; i < 500; ++i) {
    const Vec3 t{coord(rng), coord(rng), coord(rng)};
    const IKSolutionSet a = solve_ik(t);
    for (std::size_t k = 1; k < a.solutions.size(); ++k) {
      CHECK(lex_angle_less(a.solutions[k - 1], a.solutions[k]));
      for (std::size_t j = 0; j < k; ++j)
        CHECK(max_angle_diff(a.solutions[j], a.solutions[k]) >= 1e-9);
    }
    const IKSolutionSet b = solve_ik(t);
    REQUIRE(a.solutions.size() == b.solutions.size());
    for (std::size_t k = 0; k < a.solutions.size(); ++k)
      CHECK(std::memcmp(&a.solutions[k], &b.solutions[k],
                        sizeof(JointConfig)) == 0);
  }
}

TEST_CASE("interior targets match the grid oracle") {
  // A small sweep here; the acceptance suite runs the full 20^3 grid.
  for (double phi : {-2.0, 0.5, 2.9})
    for (double radius : {80.0, 120.0, 150.0})
      for (double z : {220.0, 280.0, 340.0})
        check_against_oracle(
            Vec3{radius * std::cos(phi), radius * std::sin(phi), z});
}

TEST_CASE("stretched-elbow targets merge branches and flag the boundary") {
  // theta4 equal to the distal phase stretches the planar pair to full
  // length; the two elbow branches coincide up to rounding of the target, so
  // they either collapse (2 solutions) or survive as a flagged near-double
  // pair (4 solutions), depending on which side of the boundary the rounded
  // target lands.
  const JointConfig stretched =
      JointConfig::from_angles(0.4, 0.9, kDistalPhase);
  const Vec3 target = forward_kinematics(stretched);
  const IKSolutionSet set = solve_ik(target);
  REQUIRE(set.feasible);
  CHECK(set.boundary);
  CHECK((set.solutions.size() == 2 || set.solutions.size() == 4));
  CHECK(contains_close(set, stretched, 1e-5));
  for (const JointConfig& q : set.solutions)
    CHECK(max_abs_residual(fk_residuals(q, target)) <= 1e-6);
}

TEST_CASE("tangent base-circle targets keep a single theta1 branch") {
  // r == kLateralOffset exactly: theta1 is unique, the elbow still has two.
  const Vec3 target{kLateralOffset, 0.0, kBaseHeight + 200.0};
  const IKSolutionSet set = solve_ik(target);
  REQUIRE(set.feasible);
  CHECK(set.boundary);
  CHECK(set.solutions.size() == 2);
  for (const JointConfig& q : set.solutions) {
    CHECK(max_abs_residual(fk_residuals(q, target)) <= 1e-6);
    CHECK((forward_kinematics(q) - target).max_abs() < 1e-6);
  }
}
