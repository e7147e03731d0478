#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace cobotplan {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Wrap an angle to (-pi, pi]. A tie at -pi maps to +pi so every angle has a
// unique representative.
inline double normalize_angle(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r = kPi;
  return r;
}

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double k) const { return {k * x, k * y, k * z}; }

  bool operator==(const Vec3& o) const = default;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
  double max_abs() const {
    return std::max({std::abs(x), std::abs(y), std::abs(z)});
  }
  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
};

inline Vec3 operator*(double k, const Vec3& v) { return v * k; }

// Row-major 4x4 affine transform.
struct Mat4 {
  std::array<double, 16> m{};

  static Mat4 identity() {
    Mat4 t;
    t.m[0] = t.m[5] = t.m[10] = t.m[15] = 1.0;
    return t;
  }

  double& operator()(std::size_t r, std::size_t c) { return m[4 * r + c]; }
  double operator()(std::size_t r, std::size_t c) const { return m[4 * r + c]; }

  Mat4 operator*(const Mat4& o) const {
    Mat4 out;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (std::size_t k = 0; k < 4; ++k) acc += (*this)(r, k) * o(k, c);
        out(r, c) = acc;
      }
    return out;
  }

  // Applies the transform to a point (w = 1).
  Vec3 transform_point(const Vec3& p) const {
    return {m[0] * p.x + m[1] * p.y + m[2] * p.z + m[3],
            m[4] * p.x + m[5] * p.y + m[6] * p.z + m[7],
            m[8] * p.x + m[9] * p.y + m[10] * p.z + m[11]};
  }

  Vec3 translation() const { return {m[3], m[7], m[11]}; }
};

}  // namespace cobotplan
