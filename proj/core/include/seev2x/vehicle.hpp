#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seev2x/geometry.hpp"
#include "seev2x/road_network.hpp"

namespace seev2x {

enum class VehicleId : std::uint64_t {};

constexpr std::uint64_t to_underlying(VehicleId id) { return static_cast<std::uint64_t>(id); }

/// Temporary desired-speed cap around a hazard anchor.
struct CautionCommand {
  Vec2 anchor;               // hazard position the cap is centred on, m
  double speed_cap = 5.0;    // m/s
  double zone_radius = 30.0; // m
  double expires = 0.0;      // s, simulation time

  friend bool operator==(const CautionCommand&, const CautionCommand&) = default;
};

struct VehicleState {
  VehicleId id{};
  LanePosition pos;
  double speed = 0.0;  // m/s
  double accel = 0.0;  // m/s^2
  /// Remaining lanes to traverse; always starts with pos.lane.
  std::vector<LaneId> route;
  std::optional<CautionCommand> active_caution;
  double spawn_time = 0.0;  // s

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

inline constexpr double kPathSampleSpacing = 0.5;  // s

/// Constant-speed extrapolation along the route, sampled every 0.5 s up to
/// `horizon`. The first point is the current position; if the route ends
/// inside the horizon the last point is the route end. A stationary vehicle
/// yields only its current position.
std::vector<Vec2> predicted_path(const VehicleState& v, double horizon, const RoadNetwork& network);

}  // namespace seev2x
