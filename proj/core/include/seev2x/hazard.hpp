#pragma once

#include <string_view>
#include <vector>

#include "seev2x/geometry.hpp"
#include "seev2x/road_network.hpp"

namespace seev2x {

enum class HazardKind { none, occluded_pedestrian, pedestrian, obstacle };

std::string_view to_string(HazardKind kind);
HazardKind parse_hazard_kind(std::string_view text);

struct HazardEvent {
  HazardKind kind = HazardKind::occluded_pedestrian;
  Vec2 position;
  std::vector<LaneId> affected_lanes;  // sorted, unique
  double start_s = 0.0;
  double end_s = 0.0;

  bool active_at(double t) const { return t >= start_s && t < end_s; }

  friend bool operator==(const HazardEvent&, const HazardEvent&) = default;
};

/// Throws ValidationError unless start < end and the affected lanes are a
/// non-empty subset of the network's lanes.
void validate(const HazardEvent& hazard, const RoadNetwork& network);

struct RsuNode {
  Vec2 position;
  int location_label = 1;
  double broadcast_period = 0.100;  // s
  double camera_range = 60.0;       // m

  friend bool operator==(const RsuNode&, const RsuNode&) = default;
};

RsuNode make_rsu(const RoadNetwork& network, int location_label, double broadcast_period = 0.100,
                 double camera_range = 60.0);

/// Where the default occluded pedestrian stands relative to its RSU: `lead`
/// metres further along the reference route, `curb_offset` metres to the
/// right of that lane's centerline.
struct HazardPlacement {
  double lead = 20.0;        // m
  double curb_offset = 2.0;  // m
};

/// The default hazard for an RSU location: an occluded pedestrian next to the
/// reference route, threatening only the reference-route lane it stands on
/// (lane 1 on the expressway, c or its continuation at the intersection).
HazardEvent default_hazard(const RoadNetwork& network, int location_label,
                           const HazardPlacement& placement, double start_s, double end_s);

}  // namespace seev2x
