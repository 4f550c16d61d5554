#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>

namespace figop {

inline constexpr double kPi = 3.14159265358979323846;

// World coordinate in meters.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

// Heading of the vector from `from` to `to`, in (-pi, pi].
inline double heading(Vec2 from, Vec2 to) { return std::atan2(to.y - from.y, to.x - from.x); }

// |a - b| wrapped to [0, pi].
inline double angle_delta(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2.0 * kPi);
  return d > kPi ? 2.0 * kPi - d : d;
}

// Global, world-anchored grid cell index. Cell (x, y) covers
// [x*res, (x+1)*res) x [y*res, (y+1)*res).
struct GridCell {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

inline GridCell cell_of(Vec2 p, double resolution) {
  return {static_cast<int>(std::floor(p.x / resolution)), static_cast<int>(std::floor(p.y / resolution))};
}

inline Vec2 cell_center(GridCell c, double resolution) {
  return {(c.x + 0.5) * resolution, (c.y + 0.5) * resolution};
}

}  // namespace figop

template <>
struct std::hash<figop::GridCell> {
  std::size_t operator()(const figop::GridCell& c) const noexcept {
    return std::hash<long long>{}((static_cast<long long>(c.x) << 32) ^ static_cast<unsigned>(c.y));
  }
};
