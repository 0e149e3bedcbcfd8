#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seev2x/behavior.hpp"
#include "seev2x/channel.hpp"
#include "seev2x/hazard.hpp"
#include "seev2x/idm.hpp"
#include "seev2x/messaging.hpp"
#include "seev2x/random.hpp"
#include "seev2x/road_network.hpp"
#include "seev2x/vehicle.hpp"

namespace seev2x::sim {

struct HazardConfig {
  bool enabled = false;
  HazardKind kind = HazardKind::occluded_pedestrian;
  /// Explicit placement. Without it the hazard is placed relative to the
  /// RSU location by `placement`.
  std::optional<Vec2> position;
  std::vector<LaneId> affected_lanes;  // required with an explicit position
  HazardPlacement placement;
  double start_s = 0.0;
  std::optional<double> end_s;  // defaults to the end of the run
};

struct YieldParams {
  double tau = 4.0;                 // s, look-ahead for crossing traffic
  double approach_distance = 50.0;  // m, distance at which the rule applies
  double commit_deceleration = 4.5; // m/s^2; closer than v^2/(2*this) means committed
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::expressway;
  GeometryParams geometry = GeometryParams::defaults_for(ScenarioKind::expressway);
  bool rsu_enabled = true;
  int rsu_location_label = 1;
  policy::ReactionMode mode = policy::ReactionMode::semantic;
  double spawn_rate = 0.1;     // vehicles/s per entry lane
  double initial_speed = 20.0; // m/s
  double duration = 300.0;     // s
  double warmup = 60.0;        // s excluded from run aggregates
  double dt = 0.1;             // s
  std::uint64_t seed = 1;
  double vehicle_length = 5.0; // m

  HazardConfig hazard;
  double broadcast_period = 0.100;  // s
  double camera_range = 60.0;       // m

  idm::IdmParams idm;
  radio::ChannelModel channel;
  msg::LinkQualityConfig link;
  policy::PolicyConfig policy;
  YieldParams yield;

  /// Defaults for a scenario template (geometry included).
  static ScenarioConfig defaults(ScenarioKind kind);
};

/// Throws ValidationError naming the offending field.
void validate(const ScenarioConfig& cfg);

struct TickMetrics {
  double time = 0.0;        // s, end of tick
  double mean_speed = 0.0;  // m/s over active vehicles, 0 when none
  std::size_t cautioned = 0;
  std::size_t active = 0;

  friend bool operator==(const TickMetrics&, const TickMetrics&) = default;
};

struct MetricsRecord {
  std::vector<TickMetrics> ticks;
  /// Vehicle-seconds weighted mean speed inside the measurement window.
  double weighted_mean_speed = 0.0;
  double vehicle_seconds = 0.0;
  std::uint64_t caution_activations = 0;
  std::uint64_t completed_trips = 0;
  bool collision = false;
  std::string fault;  // diagnostic when collision is set

  friend bool operator==(const MetricsRecord&, const MetricsRecord&) = default;
};

/// Pre-drawn Poisson arrivals: per entry lane, exponential inter-arrival
/// times at `rate` up to `horizon`. Ids are assigned in (time, lane) order so
/// vehicle identity does not depend on the traffic state.
struct Arrival {
  double time = 0.0;
  std::size_t lane_index = 0;  // into the network's entry lanes
  VehicleId id{};
};
std::vector<Arrival> draw_arrivals(std::size_t entry_lane_count, double rate, double horizon,
                                   std::uint64_t seed);

/// Entry/exit distances from a vehicle front to the conflict zone along its
/// route. Negative entry means the front is already past the entry line.
struct ZoneRelation {
  double entry = 0.0;  // m
  double exit = 0.0;   // m
};
std::optional<ZoneRelation> zone_relation(const VehicleState& v, const RoadNetwork& network);

/// Gap acceptance at the conflict zone. A vehicle within `approach_distance`
/// of the entry line that is not yet committed must hold at the line when a
/// crossing vehicle occupies the zone, or is projected to reach it within
/// `tau` and has precedence. North-south traffic (c, d) has precedence over
/// east-west (a, b); otherwise earlier projected arrival, then lower id. A
/// vehicle waiting at its line counts as arriving now. Returns the IDM
/// acceleration toward the entry line treated as a standing leader.
std::optional<double> intersection_yield(const VehicleState& v, std::span<const VehicleState> others,
                                         const RoadNetwork& network, const idm::IdmParams& p,
                                         const YieldParams& y, double vehicle_length);

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& cfg);
  Simulation(const ScenarioConfig& cfg, std::shared_ptr<const RoadNetwork> network);

  /// Advances one dt through the fixed phase order:
  ///  1 hazard activation, 2 due broadcasts, 3 delivery and reaction,
  ///  4 caution expiry, 5 intersection yield, 6 IDM step, 7 despawn,
  ///  8 spawn, 9 metrics.
  /// Throws CollisionFault (after recording it in metrics()).
  void tick();
  bool finished() const { return tick_index_ >= total_ticks_; }

  double now() const { return static_cast<double>(tick_index_) * cfg_.dt; }
  std::uint64_t tick_count() const { return tick_index_; }
  std::uint64_t total_ticks() const { return total_ticks_; }

  std::vector<VehicleState> vehicles() const;
  std::size_t active_count() const { return agents_.size(); }
  std::size_t queued_count() const;
  std::uint64_t arrived_count() const { return arrived_; }
  std::uint64_t completed_count() const { return completed_; }

  const RoadNetwork& network() const { return *network_; }
  const ScenarioConfig& config() const { return cfg_; }
  const std::vector<HazardEvent>& hazards() const { return hazards_; }
  const std::vector<RsuNode>& rsus() const { return rsus_; }

  /// Aggregates so far; complete once finished().
  MetricsRecord metrics() const;

 private:
  struct Agent {
    VehicleState state;
    RandomStream channel_rng;
  };

  void deliver(std::span<const radio::BroadcastEvent> events, double now, bool in_window);
  void advance(double now);
  void spawn(double now);
  void record(double t);
  const msg::SceneDescription& scene_for(const radio::BroadcastEvent& e);

  ScenarioConfig cfg_;
  std::shared_ptr<const RoadNetwork> network_;
  std::vector<LaneId> entry_lanes_;
  std::vector<RsuNode> rsus_;
  std::vector<HazardEvent> hazards_;
  std::map<std::pair<int, const HazardEvent*>, msg::SceneDescription> scenes_;
  std::map<LaneId, std::optional<std::pair<double, double>>> zone_spans_;

  std::vector<Agent> agents_;  // ascending id
  std::vector<Arrival> arrivals_;
  std::size_t next_arrival_ = 0;
  std::vector<std::deque<Arrival>> queues_;  // per entry lane

  std::uint64_t tick_index_ = 0;
  std::uint64_t total_ticks_ = 0;
  std::uint64_t arrived_ = 0;
  std::uint64_t completed_ = 0;

  MetricsRecord metrics_;
  double speed_sum_in_window_ = 0.0;
  std::uint64_t samples_in_window_ = 0;
};

/// Runs to completion. Collisions are reported in the record, not thrown.
MetricsRecord simulate(const ScenarioConfig& cfg);
MetricsRecord simulate(const ScenarioConfig& cfg, std::shared_ptr<const RoadNetwork> network);

/// Like simulate, but a collision throws CollisionFault.
MetricsRecord run(const ScenarioConfig& cfg);
MetricsRecord run(const ScenarioConfig& cfg, std::shared_ptr<const RoadNetwork> network);

}  // namespace seev2x::sim
