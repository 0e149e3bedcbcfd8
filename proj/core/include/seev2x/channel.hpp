#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "seev2x/hazard.hpp"
#include "seev2x/messaging.hpp"
#include "seev2x/random.hpp"

namespace seev2x::radio {

/// Flat reception rate out to `reliable_range`, then a linear descent to
/// zero at `max_range`.
struct ChannelModel {
  double reliable_range = 50.0;  // m
  double reliable_rate = 0.95;
  double max_range = 150.0;      // m

  friend bool operator==(const ChannelModel&, const ChannelModel&) = default;
};

void validate(const ChannelModel& c);

double reception_probability(double distance, const ChannelModel& c = {});

using Payload = std::variant<msg::TraditionalAlert, msg::SemanticMessage>;

struct BroadcastEvent {
  int rsu_label = 1;
  Vec2 origin;  // transmitting RSU position
  Payload payload;
  double tx_time = 0.0;
  std::uint64_t sequence = 0;  // k in tx_time = detection + k * period
  /// The hazard that triggered the broadcast.
  const HazardEvent* hazard = nullptr;
};

/// Bernoulli draw against reception_probability(|receiver - origin|).
/// Always consumes exactly one draw from `rng`.
bool try_deliver(const BroadcastEvent& event, Vec2 receiver_pos, const ChannelModel& c,
                 RandomStream& rng);

/// Half-open time interval [begin, end), s.
struct TimeWindow {
  double begin = 0.0;
  double end = 0.0;
};

/// Broadcasts scheduled inside `window`. An RSU that sees an active hazard
/// within camera range transmits at detection + k * broadcast_period for
/// k = 0, 1, ... while the hazard stays active; detection is the hazard's
/// start time. With several visible hazards the first one listed drives the
/// schedule. Consecutive windows partition the schedule exactly, so the
/// total count does not depend on how time is sliced.
std::vector<BroadcastEvent> due_broadcasts(std::span<const RsuNode> rsus,
                                           std::span<const HazardEvent> hazards, TimeWindow window);

}  // namespace seev2x::radio
