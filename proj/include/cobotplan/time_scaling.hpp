#pragma once

#include <stdexcept>

namespace cobotplan {

// Quintic smoothstep 6u^5 - 15u^4 + 10u^3 on u in [0,1]; the lowest-degree
// polynomial with zero velocity and acceleration at both ends.
inline double quintic_smoothstep(double u) {
  return u * u * u * (10.0 + u * (6.0 * u - 15.0));
}

// Maps step t of T to the curve parameter s = f(t/T).
inline double time_scale(int t, int steps) {
  if (steps < 1) throw std::invalid_argument("time_scale: steps must be >= 1");
  if (t < 0 || t > steps)
    throw std::out_of_range("time_scale: step outside [0, T]");
  return quintic_smoothstep(static_cast<double>(t) / steps);
}

}  // namespace cobotplan
