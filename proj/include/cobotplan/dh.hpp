#pragma once

#include <array>
#include <optional>

#include "cobotplan/geometry.hpp"

namespace cobotplan {

// Free joints of the reduced 3-DOF chain. Joints 2 and 5..8 are locked.
enum class Joint { theta1, theta3, theta4 };

// One modified D-H row: Trans_x(a) * Rot_x(alpha) * Trans_z(d) * Rot_z(theta).
// When `joint` is set, theta is that free joint; otherwise `theta` is a fixed
// offset baked into the table.
struct DHRow {
  double a = 0.0;      // link length [mm]
  double alpha = 0.0;  // link twist [rad]
  double d = 0.0;      // link offset [mm]
  double theta = 0.0;  // fixed joint angle [rad]; unused when `joint` is set
  std::optional<Joint> joint;
};

using DHTable = std::array<DHRow, 8>;

// myCobot 280 dimensions [mm].
inline constexpr double kBaseHeight = 131.56;      // d1
inline constexpr double kShoulderOffset = 33.195;  // d3 and d6
inline constexpr double kUpperArm = 110.4;         // a4
inline constexpr double kForearm = 96.0;           // a5
inline constexpr double kWristLength = 73.18;      // a7
inline constexpr double kToolLength = 43.6;        // a8

// The built-in chain, rows i = 1..8.
inline const DHTable& mycobot_table() {
  static const DHTable table = {{
      {0.0, 0.0, kBaseHeight, 0.0, Joint::theta1},
      {0.0, -kPi / 2, 0.0, -kPi / 2, std::nullopt},
      {0.0, -kPi / 2, kShoulderOffset, 0.0, Joint::theta3},
      {kUpperArm, 0.0, 0.0, 0.0, Joint::theta4},
      {kForearm, 0.0, 0.0, 0.0, std::nullopt},
      {0.0, 0.0, kShoulderOffset, 0.0, std::nullopt},
      {kWristLength, 0.0, 0.0, -kPi / 2, std::nullopt},
      {kToolLength, 0.0, 0.0, 0.0, std::nullopt},
  }};
  return table;
}

}  // namespace cobotplan
