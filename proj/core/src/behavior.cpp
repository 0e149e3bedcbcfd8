#include "seev2x/behavior.hpp"

#include <algorithm>
#include <string>

#include "seev2x/errors.hpp"

namespace seev2x::policy {

std::string_view to_string(ReactionMode m) {
  return m == ReactionMode::traditional ? "traditional" : "semantic";
}

ReactionMode parse_reaction_mode(std::string_view text) {
  if (text == "traditional") return ReactionMode::traditional;
  if (text == "semantic") return ReactionMode::semantic;
  throw ValidationError("invalid reaction mode '" + std::string(text) +
                        "' (expected traditional or semantic)");
}

void validate(const PolicyConfig& c, double v0) {
  if (!(c.caution.speed_cap >= 0.0) || !(c.caution.speed_cap < v0)) {
    throw ValidationError("speed_cap must satisfy 0 <= speed_cap < v0");
  }
  if (!(c.caution.zone_radius > 0.0)) throw ValidationError("zone_radius must be positive");
  if (!(c.caution.hold > 0.0)) throw ValidationError("hold must be positive");
  if (!(c.relevance.horizon > 0.0)) throw ValidationError("horizon must be positive");
  if (!(c.relevance.lateral_threshold > 0.0)) {
    throw ValidationError("lateral_threshold must be positive");
  }
  msg::validate(c.weights);
}

namespace {

// Condition 2: the point projects onto some route lane strictly ahead of the
// vehicle (later lanes count as ahead in full).
bool lies_ahead(const VehicleState& v, Vec2 point, double lateral_threshold,
                const RoadNetwork& network) {
  for (std::size_t i = 0; i < v.route.size(); ++i) {
    const Lane& lane = network.lane(v.route[i]);
    const Projection p = project_onto_polyline(lane.polyline, point);
    if (p.distance > lateral_threshold) continue;
    if (i > 0 || p.arc_length > v.pos.offset) return true;
  }
  return false;
}

}  // namespace

bool relevance(const VehicleState& v, const msg::HazardContext& ctx, const RelevanceParams& params,
               const RoadNetwork& network) {
  const auto lanes = ctx.affected_lanes();
  const bool aligned = std::any_of(lanes.begin(), lanes.end(), [&](const LaneId& id) {
    return std::find(v.route.begin(), v.route.end(), id) != v.route.end();
  });
  if (!aligned) return false;

  const auto threats = ctx.threat_positions();
  const auto path = predicted_path(v, params.horizon, network);
  return std::any_of(threats.begin(), threats.end(), [&](Vec2 h) {
    return lies_ahead(v, h, params.lateral_threshold, network) &&
           point_polyline_distance(h, path) <= params.lateral_threshold;
  });
}

std::optional<CautionCommand> on_receive(const VehicleState& v, const radio::Payload& payload,
                                         ReactionMode mode, double now, const PolicyConfig& config,
                                         const RoadNetwork& network) {
  const auto command = [&](Vec2 anchor) {
    return CautionCommand{anchor, config.caution.speed_cap, config.caution.zone_radius,
                          now + config.caution.hold};
  };

  if (mode == ReactionMode::traditional) {
    const auto* alert = std::get_if<msg::TraditionalAlert>(&payload);
    if (!alert) throw ConfigurationError("semantic payload delivered in traditional mode");
    return command(alert->hazard_position);
  }

  const auto* message = std::get_if<msg::SemanticMessage>(&payload);
  if (!message) throw ConfigurationError("traditional payload delivered in semantic mode");
  const msg::HazardContext ctx = msg::decode_semantic(*message, config.weights);
  if (!relevance(v, ctx, config.relevance, network)) return std::nullopt;
  // Anchor on the top-ranked threat, which is where the alert would point.
  return command(ctx.threat_positions().front());
}

double effective_desired_speed(const VehicleState& v, double now, double v0,
                               const RoadNetwork& network) {
  const auto& c = v.active_caution;
  if (!c || now >= c->expires) return v0;
  if (distance(embed(v.pos, network), c->anchor) > c->zone_radius) return v0;
  return std::min(v0, c->speed_cap);
}

}  // namespace seev2x::policy
