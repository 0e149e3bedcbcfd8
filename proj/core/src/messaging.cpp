#include "seev2x/messaging.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <string>
#include <tuple>

#include "seev2x/errors.hpp"

namespace seev2x::msg {

std::string_view to_string(ElementClass c) {
  switch (c) {
    case ElementClass::human: return "human";
    case ElementClass::vehicle_parked: return "vehicle_parked";
    case ElementClass::road: return "road";
    case ElementClass::obstacle: return "obstacle";
  }
  return "road";
}

std::string_view to_string(LinkQuality q) {
  switch (q) {
    case LinkQuality::high: return "high";
    case LinkQuality::medium: return "medium";
    case LinkQuality::low: return "low";
  }
  return "low";
}

SceneDescription scene_for_hazard(const HazardEvent& hazard, const RsuNode& rsu,
                                  const RoadNetwork& network) {
  const Lane& lane = network.lane(hazard.affected_lanes.front());
  const Projection foot = project_onto_polyline(lane.polyline, hazard.position);
  const Vec2 road_point = polyline_point_at(lane.polyline, foot.arc_length);

  SceneDescription scene;
  scene.elements.push_back({ElementClass::human, hazard.position, {}, hazard.affected_lanes,
                            hazard.kind == HazardKind::occluded_pedestrian});
  if (hazard.kind == HazardKind::occluded_pedestrian) {
    // The occluder stands just upstream of the pedestrian, on the curb side.
    scene.elements.push_back(
        {ElementClass::vehicle_parked, hazard.position - 3.0 * lane.direction, {}, {}, false});
  }
  scene.elements.push_back({ElementClass::road, road_point, {}, {}, false});

  std::erase_if(scene.elements, [&](const SemanticElement& e) {
    return distance(e.position, rsu.position) > rsu.camera_range;
  });
  return scene;
}

void validate(const LinkQualityConfig& c) {
  if (!(c.high_max_distance > 0.0) || !(c.medium_max_distance > c.high_max_distance)) {
    throw ValidationError("link quality thresholds must satisfy 0 < high < medium");
  }
  if (c.budgets[2] == 0 || c.budgets[1] < c.budgets[2] || c.budgets[0] < c.budgets[1]) {
    throw ValidationError("link quality budgets must be positive and non-increasing high->low");
  }
}

LinkQualityLevel query_link_quality(double distance_rsu_to_vehicle, const LinkQualityConfig& c) {
  if (distance_rsu_to_vehicle <= c.high_max_distance) return c.level(LinkQuality::high);
  if (distance_rsu_to_vehicle <= c.medium_max_distance) return c.level(LinkQuality::medium);
  return c.level(LinkQuality::low);
}

double ImportanceWeights::base(ElementClass c) const {
  switch (c) {
    case ElementClass::human: return human;
    case ElementClass::obstacle: return obstacle;
    case ElementClass::vehicle_parked: return vehicle_parked;
    case ElementClass::road: return road;
  }
  return road;
}

void validate(const ImportanceWeights& w) {
  for (double x : {w.human, w.obstacle, w.vehicle_parked, w.road, w.occluded_bonus, w.lane_bonus}) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      throw ValidationError("importance weights must be finite and non-negative");
    }
  }
  const double best_other = std::max({w.obstacle, w.vehicle_parked, w.road}) + w.occluded_bonus +
                            w.lane_bonus * static_cast<double>(w.max_bonus_lanes);
  if (!(w.human > best_other)) {
    throw ValidationError("importance weight 'human' must exceed every non-human score (max " +
                          std::to_string(best_other) + ")");
  }
}

double importance_score(const SemanticElement& e, const ImportanceWeights& w) {
  const auto lanes = std::min(e.associated_lanes.size(), w.max_bonus_lanes);
  return w.base(e.cls) + (e.occluded ? w.occluded_bonus : 0.0) +
         w.lane_bonus * static_cast<double>(lanes);
}

namespace {

// Strict ordering used both to sort and to validate received messages.
bool ranks_before(const SemanticElement& a, const SemanticElement& b, const ImportanceWeights& w) {
  const double sa = importance_score(a, w);
  const double sb = importance_score(b, w);
  if (sa != sb) return sa > sb;
  return std::tuple{to_string(a.cls), a.position.x, a.position.y} <
         std::tuple{to_string(b.cls), b.position.x, b.position.y};
}

HazardKind cause_of(const SemanticElement& e) {
  switch (e.cls) {
    case ElementClass::human:
      return e.occluded ? HazardKind::occluded_pedestrian : HazardKind::pedestrian;
    case ElementClass::obstacle: return HazardKind::obstacle;
    default: return HazardKind::none;
  }
}

}  // namespace

SemanticMessage encode_semantic(const SceneDescription& scene, const LinkQualityLevel& q, double now,
                                const ImportanceWeights& w) {
  if (scene.elements.empty()) throw ValidationError("cannot encode an empty scene");
  if (q.element_budget == 0) throw ValidationError("link quality budget must be positive");

  std::vector<SemanticElement> ranked = scene.elements;
  std::stable_sort(ranked.begin(), ranked.end(),
                   [&](const auto& a, const auto& b) { return ranks_before(a, b, w); });
  if (ranked.size() > q.element_budget) ranked.resize(q.element_budget);

  SemanticMessage m;
  m.link = q;
  m.timestamp = now;
  for (const auto& e : ranked) {
    if (auto c = cause_of(e); c != HazardKind::none) {
      m.cause = c;
      break;
    }
  }
  m.elements = std::move(ranked);
  return m;
}

std::vector<LaneId> HazardContext::affected_lanes() const {
  std::set<LaneId> all;
  for (const auto& e : entries) all.insert(e.lanes.begin(), e.lanes.end());
  return {all.begin(), all.end()};
}

std::vector<Vec2> HazardContext::threat_positions() const {
  std::vector<Vec2> out;
  for (const auto& e : entries) {
    if (!e.lanes.empty()) out.push_back(e.position);
  }
  return out;
}

HazardContext decode_semantic(const SemanticMessage& m, const ImportanceWeights& w) {
  if (m.elements.size() > m.link.element_budget) {
    throw ValidationError("semantic message carries " + std::to_string(m.elements.size()) +
                          " elements, over its budget of " + std::to_string(m.link.element_budget));
  }
  for (std::size_t i = 1; i < m.elements.size(); ++i) {
    if (ranks_before(m.elements[i], m.elements[i - 1], w)) {
      throw ValidationError("semantic message elements are not in importance order");
    }
  }
  HazardContext ctx;
  ctx.cause = m.cause;
  ctx.entries.reserve(m.elements.size());
  for (const auto& e : m.elements) ctx.entries.push_back({e.cls, e.position, e.associated_lanes});
  return ctx;
}

// ---- wire record -----------------------------------------------------------

namespace {

constexpr std::uint8_t kMagic[4] = {'S', 'V', '2', 'X'};
constexpr std::uint8_t kVersion = 1;

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    u8(static_cast<std::uint8_t>(v));
    u8(static_cast<std::uint8_t>(v >> 8));
  }
  void f64(double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(bits >> (8 * i)));
  }
  void str(const std::string& s) {
    if (s.size() > 255) throw ValidationError("lane id too long for wire record");
    u8(static_cast<std::uint8_t>(s.size()));
    out_.insert(out_.end(), s.begin(), s.end());
  }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}
  std::uint8_t u8() {
    need(1);
    return in_[pos_++];
  }
  std::uint16_t u16() {
    const std::uint16_t lo = u8();
    return static_cast<std::uint16_t>(lo | (u8() << 8));
  }
  double f64() {
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return std::bit_cast<double>(bits);
  }
  std::string str() {
    const std::size_t n = u8();
    need(n);
    std::string s(reinterpret_cast<const char*>(in_.data() + pos_), n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == in_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > in_.size()) throw ValidationError("truncated semantic message record");
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

template <typename E>
E checked_enum(std::uint8_t raw, std::uint8_t max, const char* what) {
  if (raw > max) throw ValidationError(std::string("corrupt ") + what + " in semantic message record");
  return static_cast<E>(raw);
}

}  // namespace

std::vector<std::uint8_t> serialize(const SemanticMessage& m) {
  Writer w;
  for (auto b : kMagic) w.u8(b);
  w.u8(kVersion);
  w.u8(static_cast<std::uint8_t>(m.cause));
  w.u8(static_cast<std::uint8_t>(m.link.level));
  w.u16(static_cast<std::uint16_t>(m.link.element_budget));
  w.f64(m.timestamp);
  w.u16(static_cast<std::uint16_t>(m.elements.size()));
  for (const auto& e : m.elements) {
    w.u8(static_cast<std::uint8_t>(e.cls));
    w.u8(e.occluded ? 1 : 0);
    w.f64(e.position.x);
    w.f64(e.position.y);
    w.f64(e.velocity.x);
    w.f64(e.velocity.y);
    w.u8(static_cast<std::uint8_t>(e.associated_lanes.size()));
    for (const auto& l : e.associated_lanes) w.str(l.value);
  }
  return w.take();
}

SemanticMessage deserialize(std::span<const std::uint8_t> bytes) {
  Reader r(bytes);
  for (auto b : kMagic) {
    if (r.u8() != b) throw ValidationError("not a semantic message record");
  }
  if (r.u8() != kVersion) throw ValidationError("unsupported semantic message record version");
  SemanticMessage m;
  m.cause = checked_enum<HazardKind>(r.u8(), static_cast<std::uint8_t>(HazardKind::obstacle), "cause");
  m.link.level = checked_enum<LinkQuality>(r.u8(), static_cast<std::uint8_t>(LinkQuality::low), "level");
  m.link.element_budget = r.u16();
  m.timestamp = r.f64();
  const std::size_t n = r.u16();
  m.elements.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SemanticElement e;
    e.cls = checked_enum<ElementClass>(r.u8(), static_cast<std::uint8_t>(ElementClass::obstacle), "class");
    e.occluded = r.u8() != 0;
    e.position.x = r.f64();
    e.position.y = r.f64();
    e.velocity.x = r.f64();
    e.velocity.y = r.f64();
    const std::size_t lanes = r.u8();
    for (std::size_t k = 0; k < lanes; ++k) e.associated_lanes.emplace_back(r.str());
    m.elements.push_back(std::move(e));
  }
  if (!r.done()) throw ValidationError("trailing bytes after semantic message record");
  return m;
}

}  // namespace seev2x::msg
