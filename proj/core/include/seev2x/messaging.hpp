#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "seev2x/geometry.hpp"
#include "seev2x/hazard.hpp"
#include "seev2x/road_network.hpp"

namespace seev2x::msg {

enum class ElementClass : std::uint8_t { human, vehicle_parked, road, obstacle };

std::string_view to_string(ElementClass c);

struct SemanticElement {
  ElementClass cls = ElementClass::road;
  Vec2 position;  // m
  Vec2 velocity;  // m/s estimate
  std::vector<LaneId> associated_lanes;
  bool occluded = false;

  friend bool operator==(const SemanticElement&, const SemanticElement&) = default;
};

/// Symbolic ground truth of what an RSU camera sees.
struct SceneDescription {
  std::vector<SemanticElement> elements;
};

/// Ground-truth scene around a hazard as seen from `rsu`: the pedestrian, the
/// parked vehicle hiding it and the road surface it threatens. Elements
/// outside the camera range are dropped.
SceneDescription scene_for_hazard(const HazardEvent& hazard, const RsuNode& rsu,
                                  const RoadNetwork& network);

/// Context-free alert: where, what, when. Nothing about whom it concerns.
struct TraditionalAlert {
  Vec2 hazard_position;
  HazardKind hazard_kind = HazardKind::occluded_pedestrian;
  double timestamp = 0.0;

  friend bool operator==(const TraditionalAlert&, const TraditionalAlert&) = default;
};

enum class LinkQuality : std::uint8_t { high, medium, low };

std::string_view to_string(LinkQuality q);

struct LinkQualityLevel {
  LinkQuality level = LinkQuality::high;
  std::size_t element_budget = 8;

  friend bool operator==(const LinkQualityLevel&, const LinkQualityLevel&) = default;
};

/// Emulated network-quality query: distance thresholds and per-level budgets.
struct LinkQualityConfig {
  double high_max_distance = 50.0;    // m
  double medium_max_distance = 100.0; // m
  std::array<std::size_t, 3> budgets{8, 4, 2};  // high, medium, low

  LinkQualityLevel level(LinkQuality q) const {
    return {q, budgets[static_cast<std::size_t>(q)]};
  }
};

void validate(const LinkQualityConfig& c);

LinkQualityLevel query_link_quality(double distance_rsu_to_vehicle, const LinkQualityConfig& c = {});

/// Importance weights. Lane bonuses are counted for at most
/// `max_bonus_lanes` lanes so that the human base weight bounds every
/// non-human score.
struct ImportanceWeights {
  double human = 100.0;
  double obstacle = 50.0;
  double vehicle_parked = 20.0;
  double road = 10.0;
  double occluded_bonus = 25.0;
  double lane_bonus = 10.0;
  std::size_t max_bonus_lanes = 2;

  double base(ElementClass c) const;
};

/// Throws ValidationError if some non-human element could score at least as
/// high as a bare human.
void validate(const ImportanceWeights& w);

double importance_score(const SemanticElement& e, const ImportanceWeights& w = {});

struct SemanticMessage {
  std::vector<SemanticElement> elements;  // non-increasing importance
  HazardKind cause = HazardKind::none;
  double timestamp = 0.0;
  LinkQualityLevel link;

  friend bool operator==(const SemanticMessage&, const SemanticMessage&) = default;
};

/// Ranks the scene by importance (ties: class name, then x, then y), keeps
/// the top `q.element_budget` and derives the cause from the best-ranked
/// human or obstacle. Throws ValidationError on an empty scene.
SemanticMessage encode_semantic(const SceneDescription& scene, const LinkQualityLevel& q, double now,
                                const ImportanceWeights& w = {});

struct HazardContext {
  struct Entry {
    ElementClass cls = ElementClass::road;
    Vec2 position;
    std::vector<LaneId> lanes;

    friend bool operator==(const Entry&, const Entry&) = default;
  };
  std::vector<Entry> entries;
  HazardKind cause = HazardKind::none;

  /// Sorted union of all entries' lanes.
  std::vector<LaneId> affected_lanes() const;
  /// Positions of entries that threaten at least one lane.
  std::vector<Vec2> threat_positions() const;
};

/// Reconstructs the hazard context. Throws ValidationError if the message is
/// over budget or not in importance order.
HazardContext decode_semantic(const SemanticMessage& m, const ImportanceWeights& w = {});

/// Compact little-endian binary record of a message.
std::vector<std::uint8_t> serialize(const SemanticMessage& m);
/// Inverse of serialize. Throws ValidationError on truncated or corrupt input.
SemanticMessage deserialize(std::span<const std::uint8_t> bytes);

}  // namespace seev2x::msg
