#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cobotplan/geometry.hpp"

namespace cobotplan {

using Waypoints = std::vector<Vec3>;

// One cubic a s^3 + b s^2 + c s + d on the local parameter s in [0,1].
struct Cubic {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  double value(double s) const { return ((a * s + b) * s + c) * s + d; }
  double deriv(double s) const { return (3.0 * a * s + 2.0 * b) * s + c; }
  double second(double s) const { return 6.0 * a * s + 2.0 * b; }
};

struct SplineSegment {
  Cubic x, y, z;

  Vec3 value(double s) const { return {x.value(s), y.value(s), z.value(s)}; }
};

// Piecewise natural cubic through N+1 waypoints, N segments, each on its own
// s in [0,1] with unit knot spacing. `u` holds the solved second-derivative
// knot values (N+1 per axis, ends pinned to zero) and `v` the tridiagonal
// right-hand sides (N-1 per axis); both are kept for inspection.
struct SplineCurve {
  std::vector<SplineSegment> segments;
  std::array<std::vector<double>, 3> u;
  std::array<std::vector<double>, 3> v;

  std::size_t segment_count() const { return segments.size(); }

  void check_args(std::size_t j, double s) const {
    if (j >= segments.size())
      throw std::out_of_range("SplineCurve: segment index out of range");
    if (!(s >= 0.0 && s <= 1.0))
      throw std::out_of_range("SplineCurve: parameter outside [0,1]");
  }

  Vec3 eval(std::size_t j, double s) const {
    check_args(j, s);
    return segments[j].value(s);
  }

  // First and second derivative with respect to s [mm per unit s, mm per
  // unit s^2].
  std::pair<Vec3, Vec3> eval_derivatives(std::size_t j, double s) const {
    check_args(j, s);
    const SplineSegment& seg = segments[j];
    return {{seg.x.deriv(s), seg.y.deriv(s), seg.z.deriv(s)},
            {seg.x.second(s), seg.y.second(s), seg.z.second(s)}};
  }
};

namespace detail {

// Thomas solve of the (diag 4, off-diag 1) system; strictly diagonally
// dominant, no pivoting needed.
inline std::vector<double> solve_tridiag_141(std::vector<double> rhs) {
  const std::size_t m = rhs.size();
  if (m == 0) return rhs;
  std::vector<double> upper(m, 0.0);
  upper[0] = 1.0 / 4.0;
  rhs[0] /= 4.0;
  for (std::size_t i = 1; i < m; ++i) {
    const double w = 4.0 - upper[i - 1];
    upper[i] = 1.0 / w;
    rhs[i] = (rhs[i] - rhs[i - 1]) / w;
  }
  for (std::size_t i = m - 1; i-- > 0;) rhs[i] -= upper[i] * rhs[i + 1];
  return rhs;
}

}  // namespace detail

// Natural cubic spline fit: v_{j+1} = 6(w_j - 2 w_{j+1} + w_{j+2}) feeds the
// tridiagonal system for the interior u values, the end u values are zero,
// and per segment a = (u_{j+1}-u_j)/6, b = u_j/2,
// c = w_{j+1}-w_j - (u_{j+1}+2u_j)/6, d = w_j.
inline SplineCurve fit_natural_spline(const Waypoints& points) {
  if (points.size() < 2)
    throw std::invalid_argument("fit_natural_spline: need at least 2 waypoints");
  const std::size_t n = points.size() - 1;  // segment count

  SplineCurve curve;
  curve.segments.resize(n);

  for (int axis = 0; axis < 3; ++axis) {
    auto coord = [axis](const Vec3& p) {
      return axis == 0 ? p.x : (axis == 1 ? p.y : p.z);
    };

    std::vector<double> v(n >= 1 ? n - 1 : 0);
    for (std::size_t j = 0; j + 2 <= n; ++j)
      v[j] = 6.0 * (coord(points[j]) - 2.0 * coord(points[j + 1]) +
                    coord(points[j + 2]));

    std::vector<double> u(n + 1, 0.0);
    const std::vector<double> interior = detail::solve_tridiag_141(v);
    for (std::size_t j = 0; j < interior.size(); ++j) u[j + 1] = interior[j];

    for (std::size_t j = 0; j < n; ++j) {
      Cubic cub;
      cub.a = (u[j + 1] - u[j]) / 6.0;
      cub.b = u[j] / 2.0;
      cub.c = coord(points[j + 1]) - coord(points[j]) -
              (u[j + 1] + 2.0 * u[j]) / 6.0;
      cub.d = coord(points[j]);
      if (axis == 0)
        curve.segments[j].x = cub;
      else if (axis == 1)
        curve.segments[j].y = cub;
      else
        curve.segments[j].z = cub;
    }

    curve.u[axis] = std::move(u);
    curve.v[axis] = v;
  }
  return curve;
}

}  // namespace cobotplan
