#pragma once

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seev2x/geometry.hpp"

namespace seev2x {

struct LaneId {
  std::string value;

  LaneId() = default;
  explicit LaneId(std::string v) : value(std::move(v)) {}

  friend auto operator<=>(const LaneId&, const LaneId&) = default;
  friend bool operator==(const LaneId&, const LaneId&) = default;
};

enum class ScenarioKind { expressway, intersection };

std::string_view to_string(ScenarioKind kind);
/// Throws ValidationError for anything other than "expressway"/"intersection".
ScenarioKind parse_scenario_kind(std::string_view text);

/// Which cross-traffic stream a lane belongs to. Only meaningful for lanes
/// that cross a conflict zone.
enum class Axis { east_west, north_south };

struct Lane {
  LaneId id;
  double length = 0.0;        // m
  Vec2 direction;             // unit heading of the first segment
  std::vector<Vec2> polyline; // centerline, m
  std::vector<LaneId> successors;

  friend bool operator==(const Lane&, const Lane&) = default;
};

struct LanePosition {
  LaneId lane;
  double offset = 0.0;  // m from lane origin

  friend bool operator==(const LanePosition&, const LanePosition&) = default;
};

inline constexpr int kRsuLocationCount = 6;

/// Lengths and spacings for the scenario templates. `defaults_for` returns
/// the reference layout of each template.
struct GeometryParams {
  double lane_length = 1000.0;  // expressway lane / intersection approach, m
  double exit_length = 400.0;   // intersection exit lanes, m
  double lane_width = 3.5;      // m
  double zone_size = 20.0;      // conflict zone edge, m
  std::array<double, kRsuLocationCount> rsu_offsets{50, 150, 300, 500, 700, 900};

  static GeometryParams defaults_for(ScenarioKind kind);

  friend bool operator==(const GeometryParams&, const GeometryParams&) = default;
};

struct RoadNetwork {
  ScenarioKind kind = ScenarioKind::expressway;
  std::vector<Lane> lanes;
  std::optional<ConvexPolygon> conflict_zone;
  /// Labeled 1..6 in order; index 0 holds location 1.
  std::array<Vec2, kRsuLocationCount> rsu_locations{};
  /// Lane sequence along which the RSU locations are laid out.
  std::vector<LaneId> reference_route;
  /// Arc length of each RSU location along `reference_route`.
  std::array<double, kRsuLocationCount> rsu_route_offsets{};

  bool has_lane(const LaneId& id) const;
  /// Throws ValidationError for an unknown id.
  const Lane& lane(const LaneId& id) const;

  /// Lanes that are nobody's successor, in declaration order.
  std::vector<LaneId> entry_lanes() const;
  /// The straight-through lane sequence starting at `entry`.
  std::vector<LaneId> through_route(const LaneId& entry) const;

  /// Point for RSU location `label` (1..6). Throws ValidationError otherwise.
  Vec2 rsu_location(int label) const;

  /// Arc-length interval of `id` lying inside the conflict zone, if any.
  std::optional<std::pair<double, double>> zone_span(const LaneId& id) const;
  /// Cross-traffic axis of a lane, from its heading.
  Axis axis(const LaneId& id) const;

  friend bool operator==(const RoadNetwork&, const RoadNetwork&) = default;
};

/// Builds and validates one of the two scenario templates.
///
/// Expressway: lanes "1" and "2", parallel and eastbound, `lane_length` long,
/// lane 1 on the curb side. RSU points sit on the curb side of lane 1.
///
/// Intersection: approach lanes a (eastbound), b (westbound), c (northbound)
/// and d (southbound) of `lane_length` ending at the intersection center,
/// each continued by an exit lane "<id>_out" of `exit_length`. The conflict
/// zone is a `zone_size` square around the center. RSU points lie on the
/// median of the c/d road, measured along c's through route; an offset equal
/// to `lane_length` is the center.
RoadNetwork build_network(ScenarioKind kind, const GeometryParams& params);
inline RoadNetwork build_network(ScenarioKind kind) {
  return build_network(kind, GeometryParams::defaults_for(kind));
}

/// Checks the structural invariants of a network. Throws ValidationError.
void validate(const RoadNetwork& network);

/// Point on the lane centerline at `pos.offset`. Throws ValidationError when
/// the offset is outside [0, length] or the lane is unknown.
Vec2 embed(const LanePosition& pos, const RoadNetwork& network);

/// Moves `distance` metres forward from `pos` along `route` (which starts at
/// pos.lane). Returns the new position and the index into `route` it lies on,
/// or nullopt when the route ends first.
struct RoutePoint {
  LanePosition pos;
  std::size_t route_index = 0;
};
std::optional<RoutePoint> advance_along_route(const RoadNetwork& network,
                                              const std::vector<LaneId>& route,
                                              const LanePosition& pos, double distance);

/// Remaining arc length from `pos` to the end of `route`.
double remaining_route_length(const RoadNetwork& network, const std::vector<LaneId>& route,
                              const LanePosition& pos);

}  // namespace seev2x
