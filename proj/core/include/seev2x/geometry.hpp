#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace seev2x {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) { return {k * a.x, k * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double k) { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a);
double distance(Vec2 a, Vec2 b);
Vec2 normalized(Vec2 a);
/// Unit normal pointing to the right of travel direction `heading`.
constexpr Vec2 right_normal(Vec2 heading) { return {heading.y, -heading.x}; }

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b);

/// Distance from `p` to the polyline through `points`. A single point
/// degenerates to point distance.
double point_polyline_distance(Vec2 p, std::span<const Vec2> points);

double polyline_length(std::span<const Vec2> points);

/// Point at arc length `s` along the polyline, linearly interpolated between
/// vertices. `s` is clamped to [0, length].
Vec2 polyline_point_at(std::span<const Vec2> points, double s);

struct Projection {
  double arc_length = 0.0;  // along the polyline to the foot point
  double distance = 0.0;    // from the query point to the foot point
};

Projection project_onto_polyline(std::span<const Vec2> points, Vec2 p);

/// Counter-clockwise convex polygon.
using ConvexPolygon = std::vector<Vec2>;

bool contains(const ConvexPolygon& poly, Vec2 p);

/// Parametric interval [t0, t1] of segment a->b inside the polygon, if any.
std::optional<std::pair<double, double>> clip_segment(const ConvexPolygon& poly, Vec2 a, Vec2 b);

/// Arc-length interval of the polyline that lies inside the polygon (first
/// entry to last exit), if any.
std::optional<std::pair<double, double>> polyline_span_inside(std::span<const Vec2> points,
                                                              const ConvexPolygon& poly);

}  // namespace seev2x
