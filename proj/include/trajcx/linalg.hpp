#pragma once

#include <cmath>

namespace trajcx {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Row-major 2x2 matrix: [[xx, xy], [yx, yy]].
struct Mat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yx = 0.0;
  double yy = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 diag(double a, double b) { return {a, 0.0, 0.0, b}; }

  constexpr double det() const { return xx * yy - xy * yx; }
  constexpr double trace() const { return xx + yy; }
  constexpr Mat2 transposed() const { return {xx, yx, xy, yy}; }
  constexpr Mat2 inverse() const {
    const double d = det();
    return {yy / d, -xy / d, -yx / d, xx / d};
  }

  friend constexpr Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.xx + b.xx, a.xy + b.xy, a.yx + b.yx, a.yy + b.yy};
  }
  friend constexpr Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.xx - b.xx, a.xy - b.xy, a.yx - b.yx, a.yy - b.yy};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& a) {
    return {s * a.xx, s * a.xy, s * a.yx, s * a.yy};
  }
  friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
            a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
  }
  friend constexpr Vec2 operator*(const Mat2& a, Vec2 v) {
    return {a.xx * v.x + a.xy * v.y, a.yx * v.x + a.yy * v.y};
  }
  friend constexpr bool operator==(const Mat2& a, const Mat2& b) = default;
};

// Largest absolute entry.
inline double max_abs(const Mat2& m) {
  return std::fmax(std::fmax(std::fabs(m.xx), std::fabs(m.xy)),
                   std::fmax(std::fabs(m.yx), std::fabs(m.yy)));
}

}  // namespace trajcx
