#include "seev2x/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seev2x/errors.hpp"

namespace seev2x {

std::string_view to_string(HazardKind kind) {
  switch (kind) {
    case HazardKind::none: return "none";
    case HazardKind::occluded_pedestrian: return "occluded_pedestrian";
    case HazardKind::pedestrian: return "pedestrian";
    case HazardKind::obstacle: return "obstacle";
  }
  return "none";
}

HazardKind parse_hazard_kind(std::string_view text) {
  for (auto k : {HazardKind::occluded_pedestrian, HazardKind::pedestrian, HazardKind::obstacle}) {
    if (text == to_string(k)) return k;
  }
  throw ValidationError("unknown hazard kind '" + std::string(text) + "'");
}

void validate(const HazardEvent& hazard, const RoadNetwork& network) {
  if (!(hazard.start_s < hazard.end_s)) {
    throw ValidationError("hazard active interval must satisfy start < end");
  }
  if (hazard.affected_lanes.empty()) throw ValidationError("hazard must affect at least one lane");
  for (const auto& id : hazard.affected_lanes) {
    if (!network.has_lane(id)) {
      throw ValidationError("hazard affects unknown lane '" + id.value + "'");
    }
  }
}

RsuNode make_rsu(const RoadNetwork& network, int location_label, double broadcast_period,
                 double camera_range) {
  if (!(broadcast_period > 0.0)) throw ValidationError("broadcast_period must be positive");
  if (!(camera_range > 0.0)) throw ValidationError("camera_range must be positive");
  return RsuNode{network.rsu_location(location_label), location_label, broadcast_period,
                 camera_range};
}

HazardEvent default_hazard(const RoadNetwork& network, int location_label,
                           const HazardPlacement& placement, double start_s, double end_s) {
  network.rsu_location(location_label);  // label check
  const auto& route = network.reference_route;
  double along = network.rsu_route_offsets[static_cast<std::size_t>(location_label - 1)] +
                 placement.lead;
  double route_len = remaining_route_length(network, route, {route.front(), 0.0});
  along = std::clamp(along, 0.0, route_len);

  auto at = advance_along_route(network, route, {route.front(), 0.0}, along);
  const LanePosition pos = at ? at->pos
                              : LanePosition{route.back(), network.lane(route.back()).length};
  const Lane& lane = network.lane(pos.lane);

  HazardEvent h;
  h.kind = HazardKind::occluded_pedestrian;
  h.position = embed(pos, network) + placement.curb_offset * right_normal(lane.direction);
  h.affected_lanes = {pos.lane};
  h.start_s = start_s;
  h.end_s = end_s;
  validate(h, network);
  return h;
}

}  // namespace seev2x
