#pragma once

// Small 2D geometry toolkit shared by the environment generator, the
// simulator and the planners. Everything here is plain value types and
// free functions; no dynamic world state.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

namespace navbench {

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
};

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Vec2 position() const { return {x, y}; }
};

// Wraps an angle into (-pi, pi].
inline double normalize_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

// Oriented box: center, half extents along its local axes, rotation of the
// local x axis in world frame. Axis-aligned boxes just use angle 0.
struct Obb {
  Vec2 center;
  double half_x = 0.0;
  double half_y = 0.0;
  double angle = 0.0;

  Vec2 axis_x() const { return {std::cos(angle), std::sin(angle)}; }
  Vec2 axis_y() const { return {-std::sin(angle), std::cos(angle)}; }
};

// World point -> box-local coordinates.
inline Vec2 obb_local(const Obb& b, const Vec2& p) {
  const Vec2 d = p - b.center;
  const double c = std::cos(b.angle);
  const double s = std::sin(b.angle);
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

inline bool point_in_obb(const Obb& b, const Vec2& p) {
  const Vec2 q = obb_local(b, p);
  return std::abs(q.x) <= b.half_x && std::abs(q.y) <= b.half_y;
}

// Distance from a point to an oriented box (0 inside).
inline double dist_point_obb(const Obb& b, const Vec2& p) {
  const Vec2 q = obb_local(b, p);
  const double dx = std::max(std::abs(q.x) - b.half_x, 0.0);
  const double dy = std::max(std::abs(q.y) - b.half_y, 0.0);
  return std::hypot(dx, dy);
}

// Distance from a point to an axis-aligned box given by min/max corners.
inline double dist_point_aabb(const Vec2& p, const Vec2& lo, const Vec2& hi) {
  const double dx = std::max({lo.x - p.x, 0.0, p.x - hi.x});
  const double dy = std::max({lo.y - p.y, 0.0, p.y - hi.y});
  return std::hypot(dx, dy);
}

// First intersection parameter t >= 0 of the ray origin + t*dir with an
// axis-aligned slab box [lo, hi]; returns nullopt on a miss. A ray starting
// inside the box yields t = 0.
inline std::optional<double> ray_aabb(const Vec2& origin, const Vec2& dir,
                                      const Vec2& lo, const Vec2& hi) {
  double t0 = 0.0;
  double t1 = std::numeric_limits<double>::infinity();
  for (int axis = 0; axis < 2; ++axis) {
    const double o = axis == 0 ? origin.x : origin.y;
    const double d = axis == 0 ? dir.x : dir.y;
    const double mn = axis == 0 ? lo.x : lo.y;
    const double mx = axis == 0 ? hi.x : hi.y;
    if (std::abs(d) < 1e-300) {
      if (o < mn || o > mx) return std::nullopt;
      continue;
    }
    double ta = (mn - o) / d;
    double tb = (mx - o) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 > t1) return std::nullopt;
  }
  return t0;
}

// Same for an oriented box: transform the ray into the box frame and reuse
// the slab test.
inline std::optional<double> ray_obb(const Vec2& origin, const Vec2& dir,
                                     const Obb& b) {
  const double c = std::cos(b.angle);
  const double s = std::sin(b.angle);
  const Vec2 o = obb_local(b, origin);
  const Vec2 d{c * dir.x + s * dir.y, -s * dir.x + c * dir.y};
  return ray_aabb(o, d, {-b.half_x, -b.half_y}, {b.half_x, b.half_y});
}

// Builds the oriented box covering a wall segment of the given thickness.
inline Obb obb_from_segment(const Vec2& a, const Vec2& b, double thickness) {
  Obb box;
  box.center = {(a.x + b.x) * 0.5, (a.y + b.y) * 0.5};
  const Vec2 d = b - a;
  box.half_x = d.norm() * 0.5;
  box.half_y = thickness * 0.5;
  box.angle = std::atan2(d.y, d.x);
  return box;
}

}  // namespace navbench
