#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "cobotplan/kinematics.hpp"

namespace cobotplan {

// Geometry read off the D-H table. The xy-projection of the end effector
// always lies on a line at distance kLateralOffset from the base axis, and
// once theta1 is fixed the rest of the chain is a planar two-link problem:
// an upper arm of length kUpperArm and a rigid distal link formed by
// forearm+wrist along x and the tool along y.
inline constexpr double kLateralOffset = kShoulderOffset + kShoulderOffset;  // 66.39
inline constexpr double kDistalX = kForearm + kWristLength;                  // 169.18
inline constexpr double kDistalY = kToolLength;                              // 43.6
inline const double kDistalLink = std::hypot(kDistalX, kDistalY);
inline const double kDistalPhase = std::atan2(kDistalY, kDistalX);

inline constexpr double kResidualAccept = 1e-6;  // on the x100-scaled system
inline constexpr double kBranchMergeTol = 1e-9;  // max-norm dedup on angles
inline constexpr double kTangentTol = 1e-9;      // |r - kLateralOffset| treated as tangent
inline constexpr double kCircleNearTol = 1e-6;   // r this close to the circle flags boundary
inline constexpr double kElbowClampTol = 1e-9;   // slack on |cos| before a branch is dropped
inline constexpr double kElbowNearTol = 1e-10;   // 1-|cos| this small flags boundary

// Which algebraic conditions admit a solution at a target. `circle` is the
// theta1 condition x^2+y^2 >= kLateralOffset^2; the annulus bounds apply to
// the squared planar distance of the two-link subproblem. Margins are in
// mm^2, nonnegative when the condition holds.
struct Reachability {
  double circle_margin = 0.0;
  double annulus_lower_margin = 0.0;
  double annulus_upper_margin = 0.0;
  bool circle_ok = false;
  bool annulus_lower_ok = false;
  bool annulus_upper_ok = false;

  bool ok() const { return circle_ok && annulus_lower_ok && annulus_upper_ok; }
};

inline Reachability reachability_condition(const Vec3& target) {
  Reachability rc;
  const double r2 = target.x * target.x + target.y * target.y;
  const double dz = target.z - kBaseHeight;
  const double planar2 = r2 - kLateralOffset * kLateralOffset + dz * dz;
  const double inner = kDistalLink - kUpperArm;
  const double outer = kDistalLink + kUpperArm;
  rc.circle_margin = r2 - kLateralOffset * kLateralOffset;
  rc.annulus_lower_margin = planar2 - inner * inner;
  rc.annulus_upper_margin = outer * outer - planar2;
  rc.circle_ok = rc.circle_margin >= 0.0;
  rc.annulus_lower_ok = rc.annulus_lower_margin >= 0.0;
  rc.annulus_upper_ok = rc.annulus_upper_margin >= 0.0;
  return rc;
}

// All real solutions at one target, sorted ascending by
// (theta1, theta3, theta4). `boundary` marks targets where solution branches
// merged (tangent circle or a fully folded/stretched elbow).
struct IKSolutionSet {
  Vec3 target;
  std::vector<JointConfig> solutions;
  bool feasible = false;
  bool boundary = false;
};

namespace detail {

// Position and Jacobian of the chain in the compact planar form; used by the
// Newton polish. P and Q are the planar coordinates of the two-link
// subproblem, so x = P s1 + kLateralOffset c1, y = kLateralOffset s1 - P c1,
// z = kBaseHeight + Q.
inline void fk_compact(const JointConfig& q, Vec3& pos, double jac[3][3]) {
  const double sin34 = q.s3 * q.c4 + q.c3 * q.s4;
  const double cos34 = q.c3 * q.c4 - q.s3 * q.s4;
  const double p = kDistalX * sin34 - kDistalY * cos34 + kUpperArm * q.s3;
  const double qq = kDistalX * cos34 + kDistalY * sin34 + kUpperArm * q.c3;
  pos = {p * q.s1 + kLateralOffset * q.c1, kLateralOffset * q.s1 - p * q.c1,
         kBaseHeight + qq};
  const double dp3 = qq;                      // dP/dtheta3
  const double dp4 = qq - kUpperArm * q.c3;   // dP/dtheta4
  const double dq3 = -p;                      // dQ/dtheta3
  const double dq4 = -p + kUpperArm * q.s3;   // dQ/dtheta4
  jac[0][0] = p * q.c1 - kLateralOffset * q.s1;
  jac[0][1] = q.s1 * dp3;
  jac[0][2] = q.s1 * dp4;
  jac[1][0] = kLateralOffset * q.c1 + p * q.s1;
  jac[1][1] = -q.c1 * dp3;
  jac[1][2] = -q.c1 * dp4;
  jac[2][0] = 0.0;
  jac[2][1] = dq3;
  jac[2][2] = dq4;
}

inline bool solve3(double a[3][3], double b[3], double x[3]) {
  int piv[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int best = col;
    for (int r = col + 1; r < 3; ++r)
      if (std::abs(a[piv[r]][col]) > std::abs(a[piv[best]][col])) best = r;
    std::swap(piv[col], piv[best]);
    const double p = a[piv[col]][col];
    if (p == 0.0) return false;
    for (int r = col + 1; r < 3; ++r) {
      const double f = a[piv[r]][col] / p;
      for (int c = col; c < 3; ++c) a[piv[r]][c] -= f * a[piv[col]][c];
      b[piv[r]] -= f * b[piv[col]];
    }
  }
  for (int r = 2; r >= 0; --r) {
    double acc = b[piv[r]];
    for (int c = r + 1; c < 3; ++c) acc -= a[piv[r]][c] * x[c];
    if (a[piv[r]][r] == 0.0) return false;
    x[r] = acc / a[piv[r]][r];
  }
  return true;
}

// Newton polish on the angle parameterization. Keeps the best iterate by
// scaled residual; stops once below 1e-12 or when no longer improving.
inline void newton_polish(JointConfig& q, const Vec3& target) {
  JointConfig best = q;
  double best_res = max_abs_residual(fk_residuals(q, target));
  JointConfig cur = q;
  for (int it = 0; it < 4 && best_res > 1e-12; ++it) {
    Vec3 pos;
    double jac[3][3];
    fk_compact(cur, pos, jac);
    double rhs[3] = {target.x - pos.x, target.y - pos.y, target.z - pos.z};
    double step[3];
    if (!solve3(jac, rhs, step)) break;
    cur = JointConfig::from_angles(cur.theta1 + step[0], cur.theta3 + step[1],
                                   cur.theta4 + step[2]);
    const double res = max_abs_residual(fk_residuals(cur, target));
    if (res < best_res) {
      best = cur;
      best_res = res;
    } else {
      break;
    }
  }
  q = best;
}

}  // namespace detail

// Finds every real joint configuration reaching `target`.
//
// theta1 comes from the circle condition x c1 + y s1 = kLateralOffset (two
// branches, tangent when x^2+y^2 = kLateralOffset^2). For each branch the
// signed abscissa P = x s1 - y c1 and elevation Q = z - kBaseHeight pose a
// planar two-link problem whose elbow angle has two branches of its own, so
// interior targets carry four configurations. Candidates are polished by
// Newton iteration and only kept if the scaled residuals check out.
inline IKSolutionSet solve_ik(const Vec3& target) {
  IKSolutionSet out;
  out.target = target;
  if (!target.finite()) return out;

  const double r = std::hypot(target.x, target.y);

  double theta1_branches[2];
  int n1 = 0;
  bool boundary = false;
  if (std::abs(r - kLateralOffset) <= kTangentTol) {
    theta1_branches[n1++] = std::atan2(target.y, target.x);
    boundary = true;  // circle tangency: single theta1 branch
  } else if (r < kLateralOffset) {
    return out;
  } else {
    const double phi = std::atan2(target.y, target.x);
    const double delta = std::acos(std::clamp(kLateralOffset / r, -1.0, 1.0));
    theta1_branches[n1++] = normalize_angle(phi + delta);
    theta1_branches[n1++] = normalize_angle(phi - delta);
    if (r - kLateralOffset <= kCircleNearTol) boundary = true;
  }

  const double qz = target.z - kBaseHeight;
  std::vector<JointConfig> candidates;
  candidates.reserve(4);

  for (int i = 0; i < n1; ++i) {
    const double t1 = theta1_branches[i];
    const double s1 = std::sin(t1), c1 = std::cos(t1);
    const double p = target.x * s1 - target.y * c1;
    const double reach2 = p * p + qz * qz;
    double cos_elbow = (reach2 - kDistalLink * kDistalLink -
                        kUpperArm * kUpperArm) /
                       (2.0 * kUpperArm * kDistalLink);
    if (std::abs(cos_elbow) > 1.0) {
      if (std::abs(cos_elbow) - 1.0 > kElbowClampTol) continue;  // outside annulus
      cos_elbow = std::clamp(cos_elbow, -1.0, 1.0);
      boundary = true;  // folded/stretched elbow: branches coincide
    } else if (1.0 - std::abs(cos_elbow) <= kElbowNearTol) {
      boundary = true;  // nearly folded/stretched: branches nearly coincide
    }
    const double elbow = std::acos(cos_elbow);
    for (const double v : {elbow, -elbow}) {
      const double a = kUpperArm + kDistalLink * std::cos(v);
      const double b = kDistalLink * std::sin(v);
      const double den = a * a + b * b;
      if (den <= 0.0) continue;  // cannot occur: the annulus excludes P=Q=0
      const double s3 = (a * p - b * qz) / den;
      const double c3 = (b * p + a * qz) / den;
      JointConfig q = JointConfig::from_angles(t1, std::atan2(s3, c3),
                                               kDistalPhase + v);
      detail::newton_polish(q, target);
      if (max_abs_residual(fk_residuals(q, target)) <= kResidualAccept)
        candidates.push_back(q);
    }
  }

  std::sort(candidates.begin(), candidates.end(), lex_angle_less);
  for (const JointConfig& q : candidates) {
    bool merged = false;
    for (const JointConfig& kept : out.solutions)
      if (max_angle_diff(q, kept) < kBranchMergeTol) {
        merged = true;
        break;
      }
    if (merged)
      boundary = true;
    else
      out.solutions.push_back(q);
  }

  out.feasible = !out.solutions.empty();
  out.boundary = out.feasible && boundary;
  return out;
}

// True exactly when the system has a real solution at `target`; agrees with
// solve_ik by construction.
inline bool feasible(const Vec3& target) { return solve_ik(target).feasible; }

}  // namespace cobotplan
