#pragma once

#include <optional>
#include <string_view>

#include "seev2x/channel.hpp"
#include "seev2x/messaging.hpp"
#include "seev2x/road_network.hpp"
#include "seev2x/vehicle.hpp"

namespace seev2x::policy {

enum class ReactionMode { traditional, semantic };

std::string_view to_string(ReactionMode m);
ReactionMode parse_reaction_mode(std::string_view text);

struct CautionParams {
  double speed_cap = 5.0;     // m/s
  double zone_radius = 30.0;  // m
  double hold = 5.0;          // s a command stays valid after its last confirmation
};

struct RelevanceParams {
  double horizon = 8.0;             // s
  double lateral_threshold = 3.5;   // m
};

struct PolicyConfig {
  CautionParams caution;
  RelevanceParams relevance;
  msg::ImportanceWeights weights;
};

/// Throws ValidationError; `v0` is the free-flow desired speed the cap must
/// stay below.
void validate(const PolicyConfig& c, double v0);

/// A hazard concerns `v` iff
///  1. one of its affected lanes is on v's route,
///  2. it lies ahead of v along that route, and
///  3. the predicted path over the horizon passes within the lateral
///     threshold of a threat position.
bool relevance(const VehicleState& v, const msg::HazardContext& ctx, const RelevanceParams& params,
               const RoadNetwork& network);

/// Reaction to one delivered payload. Traditional mode cautions every
/// receiver; semantic mode cautions only receivers the decoded context is
/// relevant to. The command is identical in both modes. A payload that does
/// not match the mode throws ConfigurationError.
std::optional<CautionCommand> on_receive(const VehicleState& v, const radio::Payload& payload,
                                         ReactionMode mode, double now, const PolicyConfig& config,
                                         const RoadNetwork& network);

/// Desired speed to feed IDM: the caution cap while an unexpired command is
/// held and the vehicle is inside its zone, otherwise `v0`.
double effective_desired_speed(const VehicleState& v, double now, double v0,
                               const RoadNetwork& network);

}  // namespace seev2x::policy
