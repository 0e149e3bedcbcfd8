#include "seev2x/road_network.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "seev2x/errors.hpp"

namespace seev2x {

namespace {

constexpr double kLengthTolerance = 1e-6;

Lane straight_lane(std::string id, Vec2 from, Vec2 to, std::vector<LaneId> successors = {}) {
  Lane lane;
  lane.id = LaneId{std::move(id)};
  lane.polyline = {from, to};
  lane.length = distance(from, to);
  lane.direction = normalized(to - from);
  lane.successors = std::move(successors);
  return lane;
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ValidationError(std::string("geometry parameter '") + name + "' must be positive");
  }
}

void place_rsus(RoadNetwork& net, const GeometryParams& params, Vec2 lateral) {
  const double route_len = [&] {
    double total = 0.0;
    for (const auto& id : net.reference_route) total += net.lane(id).length;
    return total;
  }();
  for (int i = 0; i < kRsuLocationCount; ++i) {
    const double s = params.rsu_offsets[static_cast<std::size_t>(i)];
    if (s < 0.0 || s > route_len) {
      throw ValidationError("geometry parameter 'rsu_offsets' places location " +
                            std::to_string(i + 1) + " off the reference route");
    }
    if (i > 0 && !(s > params.rsu_offsets[static_cast<std::size_t>(i - 1)])) {
      throw ValidationError("geometry parameter 'rsu_offsets' must be strictly increasing");
    }
    const LanePosition start{net.reference_route.front(), 0.0};
    const auto at = advance_along_route(net, net.reference_route, start, s);
    // The route end itself is a valid location.
    const Vec2 point = at ? embed(at->pos, net)
                          : net.lane(net.reference_route.back()).polyline.back();
    net.rsu_locations[static_cast<std::size_t>(i)] = point + lateral;
    net.rsu_route_offsets[static_cast<std::size_t>(i)] = s;
  }
}

RoadNetwork build_expressway(const GeometryParams& p) {
  RoadNetwork net;
  net.kind = ScenarioKind::expressway;
  net.lanes.push_back(straight_lane("1", {0.0, 0.0}, {p.lane_length, 0.0}));
  net.lanes.push_back(straight_lane("2", {0.0, p.lane_width}, {p.lane_length, p.lane_width}));
  net.reference_route = {LaneId{"1"}};
  place_rsus(net, p, {0.0, -p.lane_width});
  return net;
}

RoadNetwork build_intersection(const GeometryParams& p) {
  const double h = p.lane_width / 2.0;
  const double a = p.lane_length;
  const double e = p.exit_length;
  RoadNetwork net;
  net.kind = ScenarioKind::intersection;
  net.lanes.push_back(straight_lane("a", {-a, -h}, {0.0, -h}, {LaneId{"a_out"}}));
  net.lanes.push_back(straight_lane("b", {a, h}, {0.0, h}, {LaneId{"b_out"}}));
  net.lanes.push_back(straight_lane("c", {h, -a}, {h, 0.0}, {LaneId{"c_out"}}));
  net.lanes.push_back(straight_lane("d", {-h, a}, {-h, 0.0}, {LaneId{"d_out"}}));
  net.lanes.push_back(straight_lane("a_out", {0.0, -h}, {e, -h}));
  net.lanes.push_back(straight_lane("b_out", {0.0, h}, {-e, h}));
  net.lanes.push_back(straight_lane("c_out", {h, 0.0}, {h, e}));
  net.lanes.push_back(straight_lane("d_out", {-h, 0.0}, {-h, -e}));
  const double z = p.zone_size / 2.0;
  net.conflict_zone = ConvexPolygon{{-z, -z}, {z, -z}, {z, z}, {-z, z}};
  net.reference_route = {LaneId{"c"}, LaneId{"c_out"}};
  place_rsus(net, p, {-h, 0.0});
  return net;
}

}  // namespace

std::string_view to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::expressway: return "expressway";
    case ScenarioKind::intersection: return "intersection";
  }
  return "unknown";
}

ScenarioKind parse_scenario_kind(std::string_view text) {
  if (text == "expressway") return ScenarioKind::expressway;
  if (text == "intersection") return ScenarioKind::intersection;
  throw ValidationError("invalid scenario kind '" + std::string(text) +
                        "' (expected expressway or intersection)");
}

GeometryParams GeometryParams::defaults_for(ScenarioKind kind) {
  GeometryParams p;
  if (kind == ScenarioKind::intersection) {
    p.lane_length = 400.0;
    p.rsu_offsets = {50, 150, 250, 330, 400, 480};
  }
  return p;
}

bool RoadNetwork::has_lane(const LaneId& id) const {
  return std::any_of(lanes.begin(), lanes.end(), [&](const Lane& l) { return l.id == id; });
}

const Lane& RoadNetwork::lane(const LaneId& id) const {
  for (const auto& l : lanes) {
    if (l.id == id) return l;
  }
  throw ValidationError("unknown lane '" + id.value + "'");
}

std::vector<LaneId> RoadNetwork::entry_lanes() const {
  std::set<LaneId> targets;
  for (const auto& l : lanes) targets.insert(l.successors.begin(), l.successors.end());
  std::vector<LaneId> out;
  for (const auto& l : lanes) {
    if (!targets.contains(l.id)) out.push_back(l.id);
  }
  return out;
}

std::vector<LaneId> RoadNetwork::through_route(const LaneId& entry) const {
  std::vector<LaneId> route{entry};
  std::set<LaneId> seen{entry};
  const Lane* current = &lane(entry);
  while (!current->successors.empty()) {
    const LaneId& next = current->successors.front();
    if (!seen.insert(next).second) break;
    route.push_back(next);
    current = &lane(next);
  }
  return route;
}

Vec2 RoadNetwork::rsu_location(int label) const {
  if (label < 1 || label > kRsuLocationCount) {
    throw ValidationError("RSU location label must be in 1..6, got " + std::to_string(label));
  }
  return rsu_locations[static_cast<std::size_t>(label - 1)];
}

std::optional<std::pair<double, double>> RoadNetwork::zone_span(const LaneId& id) const {
  if (!conflict_zone) return std::nullopt;
  return polyline_span_inside(lane(id).polyline, *conflict_zone);
}

Axis RoadNetwork::axis(const LaneId& id) const {
  const Vec2 d = lane(id).direction;
  return std::abs(d.x) >= std::abs(d.y) ? Axis::east_west : Axis::north_south;
}

RoadNetwork build_network(ScenarioKind kind, const GeometryParams& params) {
  require_positive(params.lane_length, "lane_length");
  require_positive(params.lane_width, "lane_width");
  if (kind == ScenarioKind::intersection) {
    require_positive(params.exit_length, "exit_length");
    require_positive(params.zone_size, "zone_size");
    if (params.zone_size / 2.0 >= std::min(params.lane_length, params.exit_length)) {
      throw ValidationError("geometry parameter 'zone_size' exceeds the approach/exit lanes");
    }
  }
  RoadNetwork net;
  switch (kind) {
    case ScenarioKind::expressway: net = build_expressway(params); break;
    case ScenarioKind::intersection: net = build_intersection(params); break;
    default: throw ValidationError("invalid scenario kind");
  }
  validate(net);
  return net;
}

void validate(const RoadNetwork& network) {
  std::set<LaneId> ids;
  for (const auto& l : network.lanes) {
    if (!ids.insert(l.id).second) throw ValidationError("duplicate lane id '" + l.id.value + "'");
  }
  for (const auto& l : network.lanes) {
    if (l.polyline.size() < 2) throw ValidationError("lane '" + l.id.value + "' has no centerline");
    if (!(l.length > 0.0)) throw ValidationError("lane '" + l.id.value + "' has non-positive length");
    if (std::abs(polyline_length(l.polyline) - l.length) > kLengthTolerance) {
      throw ValidationError("lane '" + l.id.value + "' length disagrees with its centerline");
    }
    for (const auto& s : l.successors) {
      if (s == l.id) throw ValidationError("lane '" + l.id.value + "' lists itself as successor");
      if (!ids.contains(s)) throw ValidationError("lane '" + l.id.value + "' has unknown successor");
    }
  }
  if (network.kind == ScenarioKind::expressway && network.conflict_zone) {
    throw ValidationError("expressway networks have no conflict zone");
  }
  if (network.kind == ScenarioKind::intersection && !network.conflict_zone) {
    throw ValidationError("intersection networks need a conflict zone");
  }
  for (std::size_t i = 1; i < network.rsu_route_offsets.size(); ++i) {
    if (!(network.rsu_route_offsets[i] > network.rsu_route_offsets[i - 1])) {
      throw ValidationError("RSU locations must be ordered along the travel direction");
    }
  }
}

Vec2 embed(const LanePosition& pos, const RoadNetwork& network) {
  const Lane& lane = network.lane(pos.lane);
  if (pos.offset < 0.0 || pos.offset > lane.length + kLengthTolerance) {
    throw ValidationError("offset " + std::to_string(pos.offset) + " outside lane '" +
                          lane.id.value + "'");
  }
  return polyline_point_at(lane.polyline, pos.offset);
}

std::optional<RoutePoint> advance_along_route(const RoadNetwork& network,
                                              const std::vector<LaneId>& route,
                                              const LanePosition& pos, double distance) {
  auto it = std::find(route.begin(), route.end(), pos.lane);
  if (it == route.end()) throw ValidationError("position lane '" + pos.lane.value + "' not on route");
  std::size_t index = static_cast<std::size_t>(it - route.begin());
  double offset = pos.offset + distance;
  while (true) {
    const double len = network.lane(route[index]).length;
    if (offset <= len) return RoutePoint{{route[index], offset}, index};
    if (index + 1 >= route.size()) return std::nullopt;
    offset -= len;
    ++index;
  }
}

double remaining_route_length(const RoadNetwork& network, const std::vector<LaneId>& route,
                              const LanePosition& pos) {
  auto it = std::find(route.begin(), route.end(), pos.lane);
  if (it == route.end()) return 0.0;
  double total = network.lane(*it).length - pos.offset;
  for (++it; it != route.end(); ++it) total += network.lane(*it).length;
  return std::max(0.0, total);
}

}  // namespace seev2x
