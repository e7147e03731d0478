#pragma once

#include <array>
#include <stdexcept>

#include "cobotplan/spline.hpp"

namespace cobotplan {

// Bundled four-point demo paths, also shipped as JSON under tests/data.
// Paths 1..5 stay inside the workspace; path 6 cuts through the unreachable
// cylinder around the base axis and is the canonical failing input.
inline const std::array<Waypoints, 6>& demo_paths() {
  static const std::array<Waypoints, 6> paths = {{
      {{-100, -100, 100}, {0, -150, 50}, {50, -100, 50}, {100, 0, 0}},
      {{-150, -100, 150}, {0, -100, 100}, {100, -50, 50}, {100, 100, 0}},
      {{-250, 0, 0}, {-150, 0, 50}, {-150, 100, 150}, {250, 100, 100}},
      {{100, 50, 0}, {50, 100, 150}, {-150, 150, 100}, {-150, 50, 50}},
      {{100, 100, -50}, {50, 100, 0}, {-100, 100, 50}, {-150, -50, 100}},
      {{150, 150, 0}, {50, 50, 100}, {-50, -50, 100}, {-150, -150, 50}},
  }};
  return paths;
}

inline const Waypoints& demo_path(int k) {
  if (k < 1 || k > 6)
    throw std::out_of_range("demo_path: index must be in 1..6");
  return demo_paths()[static_cast<std::size_t>(k - 1)];
}

}  // namespace cobotplan
