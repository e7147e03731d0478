#pragma once

#include <algorithm>
#include <array>
#include <cmath>

#include "cobotplan/dh.hpp"
#include "cobotplan/geometry.hpp"

namespace cobotplan {

// State of the free joints (theta1, theta3, theta4), carried together with
// the sine/cosine values the kinematic polynomials are written in. Angles are
// kept normalized to (-pi, pi].
struct JointConfig {
  double theta1 = 0.0;
  double theta3 = 0.0;
  double theta4 = 0.0;
  double s1 = 0.0, c1 = 1.0;
  double s3 = 0.0, c3 = 1.0;
  double s4 = 0.0, c4 = 1.0;

  static JointConfig from_angles(double t1, double t3, double t4) {
    JointConfig q;
    q.theta1 = normalize_angle(t1);
    q.theta3 = normalize_angle(t3);
    q.theta4 = normalize_angle(t4);
    q.s1 = std::sin(q.theta1);
    q.c1 = std::cos(q.theta1);
    q.s3 = std::sin(q.theta3);
    q.c3 = std::cos(q.theta3);
    q.s4 = std::sin(q.theta4);
    q.c4 = std::cos(q.theta4);
    return q;
  }

  bool operator==(const JointConfig& o) const = default;
};

// Ascending by (theta1, theta3, theta4); the ordering used for solution lists.
inline bool lex_angle_less(const JointConfig& a, const JointConfig& b) {
  if (a.theta1 != b.theta1) return a.theta1 < b.theta1;
  if (a.theta3 != b.theta3) return a.theta3 < b.theta3;
  return a.theta4 < b.theta4;
}

inline double max_angle_diff(const JointConfig& a, const JointConfig& b) {
  return std::max({std::abs(a.theta1 - b.theta1), std::abs(a.theta3 - b.theta3),
                   std::abs(a.theta4 - b.theta4)});
}

// Closed form of Tx(a) * Rx(alpha) * Tz(d) * Rz(theta). Free joints pull
// their sine/cosine straight from `q` so that chain positions and the
// polynomial residuals below agree identically, even off the unit circle.
inline Mat4 link_transform(const DHRow& row, const JointConfig& q) {
  double st, ct;
  if (row.joint) {
    switch (*row.joint) {
      case Joint::theta1: st = q.s1, ct = q.c1; break;
      case Joint::theta3: st = q.s3, ct = q.c3; break;
      default: st = q.s4, ct = q.c4; break;
    }
  } else {
    st = std::sin(row.theta);
    ct = std::cos(row.theta);
  }
  const double sa = std::sin(row.alpha);
  const double ca = std::cos(row.alpha);

  Mat4 t;
  t.m = {ct, -st, 0.0, row.a,
         ca * st, ca * ct, -sa, -row.d * sa,
         sa * st, sa * ct, ca, row.d * ca,
         0.0, 0.0, 0.0, 1.0};
  return t;
}

inline Mat4 chain_transform(const DHTable& table, const JointConfig& q) {
  Mat4 t = Mat4::identity();
  for (const DHRow& row : table) t = t * link_transform(row, q);
  return t;
}

inline Vec3 forward_kinematics(const DHTable& table, const JointConfig& q) {
  return chain_transform(table, q).translation();
}

inline Vec3 forward_kinematics(const JointConfig& q) {
  return forward_kinematics(mycobot_table(), q);
}

// The six residuals of the inverse kinematic system, with both sides scaled
// by 100 so all coefficients are integers. A configuration reaches `target`
// exactly when all six vanish.
inline std::array<double, 6> fk_residuals(const JointConfig& q,
                                          const Vec3& target) {
  const double s1 = q.s1, c1 = q.c1;
  const double s3 = q.s3, c3 = q.c3;
  const double s4 = q.s4, c4 = q.c4;
  const double f1 = -16918 * s1 * s3 * c4 - 16918 * s1 * c3 * s4 -
                    4360 * s1 * s3 * s4 + 4360 * s1 * c3 * c4 -
                    11040 * s1 * s3 - 6639 * c1 + 100 * target.x;
  const double f2 = 16918 * c1 * s3 * c4 + 16918 * c1 * c3 * s4 +
                    4360 * c1 * s3 * s4 - 4360 * c1 * c3 * c4 +
                    11040 * c1 * s3 - 6639 * s1 + 100 * target.y;
  const double f3 = -16918 * c3 * c4 + 16918 * s3 * s4 - 4360 * c3 * s4 -
                    4360 * s3 * c4 - 11040 * c3 - 13156 + 100 * target.z;
  const double f4 = s1 * s1 + c1 * c1 - 1.0;
  const double f5 = s3 * s3 + c3 * c3 - 1.0;
  const double f6 = s4 * s4 + c4 * c4 - 1.0;
  return {f1, f2, f3, f4, f5, f6};
}

inline double max_abs_residual(const std::array<double, 6>& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace cobotplan
