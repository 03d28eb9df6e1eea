#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

namespace idionet::geom {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double k) const { return {x * k, y * k}; }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_from_angle(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline double wrap_angle(double a) {
  while (a > std::numbers::pi) a -= 2.0 * std::numbers::pi;
  while (a <= -std::numbers::pi) a += 2.0 * std::numbers::pi;
  return a;
}

struct Segment {
  Vec2 a;
  Vec2 b;
};

// Distance along `dir` (unit length) from `origin` to the segment, if the ray
// hits it. Endpoint hits count; rays parallel to the segment do not.
inline std::optional<double> ray_hit(const Vec2& origin, const Vec2& dir,
                                     const Segment& seg) {
  const Vec2 e = seg.b - seg.a;
  const double denom = cross(dir, e);
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const Vec2 w = seg.a - origin;
  const double t = cross(w, e) / denom;
  const double s = cross(w, dir) / denom;
  if (t < 0.0 || s < 0.0 || s > 1.0) return std::nullopt;
  return t;
}

// Fraction along p->q at which the open chord first crosses `seg`.
inline std::optional<double> segment_hit(const Vec2& p, const Vec2& q,
                                         const Segment& seg) {
  const Vec2 d = q - p;
  const Vec2 e = seg.b - seg.a;
  const double denom = cross(d, e);
  if (std::abs(denom) < 1e-15) return std::nullopt;
  const Vec2 w = seg.a - p;
  const double t = cross(w, e) / denom;
  const double s = cross(w, d) / denom;
  if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0) return std::nullopt;
  return t;
}

inline double distance_to_segment(const Vec2& p, const Segment& seg) {
  const Vec2 e = seg.b - seg.a;
  const double len2 = dot(e, e);
  if (len2 <= 0.0) return norm(p - seg.a);
  const double t = std::clamp(dot(p - seg.a, e) / len2, 0.0, 1.0);
  return norm(p - (seg.a + e * t));
}

// Signed side of `p` relative to the directed segment a->b (positive = left).
inline double side_of(const Segment& seg, const Vec2& p) {
  return cross(seg.b - seg.a, p - seg.a);
}

// Even-odd rule; suitable for the simple (possibly non-convex) goal regions
// and obstacle footprints used by the world maps.
inline bool point_in_polygon(const std::vector<Vec2>& poly, const Vec2& p) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const bool spans = (poly[i].y > p.y) != (poly[j].y > p.y);
    if (spans) {
      const double x_at =
          (poly[j].x - poly[i].x) * (p.y - poly[i].y) / (poly[j].y - poly[i].y) +
          poly[i].x;
      if (p.x < x_at) inside = !inside;
    }
  }
  return inside;
}

}  // namespace idionet::geom
