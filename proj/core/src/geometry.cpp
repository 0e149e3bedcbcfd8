#include "seev2x/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace seev2x {

double norm(Vec2 a) { return std::hypot(a.x, a.y); }

double distance(Vec2 a, Vec2 b) { return norm(a - b); }

Vec2 normalized(Vec2 a) {
  const double n = norm(a);
  if (n == 0.0) return {};
  return {a.x / n, a.y / n};
}

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

double point_polyline_distance(Vec2 p, std::span<const Vec2> points) {
  if (points.empty()) return std::numeric_limits<double>::infinity();
  if (points.size() == 1) return distance(p, points.front());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < points.size(); ++i) {
    best = std::min(best, point_segment_distance(p, points[i - 1], points[i]));
  }
  return best;
}

double polyline_length(std::span<const Vec2> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
  return total;
}

Vec2 polyline_point_at(std::span<const Vec2> points, double s) {
  if (points.empty()) return {};
  if (s <= 0.0) return points.front();
  double walked = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double seg = distance(points[i - 1], points[i]);
    if (walked + seg >= s) {
      if (seg == 0.0) return points[i];
      const double t = (s - walked) / seg;
      return points[i - 1] + t * (points[i] - points[i - 1]);
    }
    walked += seg;
  }
  return points.back();
}

Projection project_onto_polyline(std::span<const Vec2> points, Vec2 p) {
  Projection best{0.0, std::numeric_limits<double>::infinity()};
  if (points.empty()) return best;
  if (points.size() == 1) return {0.0, distance(p, points.front())};
  double walked = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const Vec2 a = points[i - 1];
    const Vec2 ab = points[i] - a;
    const double len2 = dot(ab, ab);
    const double seg = std::sqrt(len2);
    const double t = len2 == 0.0 ? 0.0 : std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    const double d = distance(p, a + t * ab);
    if (d < best.distance) best = {walked + t * seg, d};
    walked += seg;
  }
  return best;
}

bool contains(const ConvexPolygon& poly, Vec2 p) {
  if (poly.size() < 3) return false;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    if (cross(b - a, p - a) < 0.0) return false;
  }
  return true;
}

// Cyrus-Beck clipping against the half-planes of a CCW polygon.
std::optional<std::pair<double, double>> clip_segment(const ConvexPolygon& poly, Vec2 a, Vec2 b) {
  if (poly.size() < 3) return std::nullopt;
  double t0 = 0.0;
  double t1 = 1.0;
  const Vec2 d = b - a;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 e0 = poly[i];
    const Vec2 edge = poly[(i + 1) % poly.size()] - e0;
    // inside iff cross(edge, p - e0) >= 0
    const double num = cross(edge, a - e0);
    const double den = cross(edge, d);
    if (den == 0.0) {
      if (num < 0.0) return std::nullopt;
      continue;
    }
    const double t = -num / den;
    if (den > 0.0) {
      t0 = std::max(t0, t);
    } else {
      t1 = std::min(t1, t);
    }
    if (t0 > t1) return std::nullopt;
  }
  return std::pair{t0, t1};
}

std::optional<std::pair<double, double>> polyline_span_inside(std::span<const Vec2> points,
                                                              const ConvexPolygon& poly) {
  std::optional<std::pair<double, double>> span;
  double walked = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    const double seg = distance(points[i - 1], points[i]);
    if (auto clip = clip_segment(poly, points[i - 1], points[i])) {
      const double enter = walked + clip->first * seg;
      const double leave = walked + clip->second * seg;
      if (!span) {
        span = std::pair{enter, leave};
      } else {
        span->second = leave;
      }
    }
    walked += seg;
  }
  return span;
}

}  // namespace seev2x
