#include "seev2x/scenario_file.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace seev2x::io {

namespace {

int line_of(const YAML::Node& node) { return node.Mark().line >= 0 ? node.Mark().line + 1 : 0; }

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// Reads one mapping section, recording which keys were consumed so that
// leftovers can be reported.
class Section {
 public:
  Section(YAML::Node node, std::string name) : node_(std::move(node)), name_(std::move(name)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ScenarioError("section '" + name_ + "' must be a mapping", line_of(node_));
    }
  }

  bool present() const { return node_ && node_.IsMap(); }

  template <typename T>
  void read(const std::string& key, T& target) {
    known_.push_back(key);
    if (!present()) return;
    const YAML::Node value = node_[key];
    if (!value) return;
    try {
      target = value.as<T>();
    } catch (const YAML::BadConversion&) {
      throw ScenarioError("key '" + qualified(key) + "' has the wrong type", line_of(value));
    }
  }

  template <typename T>
  void read_optional(const std::string& key, std::optional<T>& target) {
    known_.push_back(key);
    if (!present() || !node_[key]) return;
    T value{};
    read_value(key, value);
    target = value;
  }

  void read_with(const std::string& key, const std::function<void(const YAML::Node&)>& handler) {
    known_.push_back(key);
    if (!present()) return;
    const YAML::Node value = node_[key];
    if (!value) return;
    try {
      handler(value);
    } catch (const ScenarioError&) {
      throw;
    } catch (const YAML::Exception&) {
      throw ScenarioError("key '" + qualified(key) + "' has the wrong type", line_of(value));
    } catch (const std::exception& e) {
      throw ScenarioError("key '" + qualified(key) + "': " + e.what(), line_of(value));
    }
  }

  bool has(const std::string& key) const { return present() && node_[key]; }

  std::string qualified(const std::string& key) const { return name_ + "." + key; }

  void reject_unknown() const {
    if (!present()) return;
    for (const auto& kv : node_) {
      const auto key = kv.first.as<std::string>();
      if (std::find(known_.begin(), known_.end(), key) != known_.end()) continue;
      std::string message = "unknown key '" + key + "' in section '" + name_ + "'";
      if (auto hint = closest_match(key, known_); !hint.empty()) {
        message += " (did you mean '" + hint + "'?)";
      }
      throw ScenarioError(message, line_of(kv.first));
    }
  }

 private:
  template <typename T>
  void read_value(const std::string& key, T& target) {
    const YAML::Node value = node_[key];
    try {
      target = value.as<T>();
    } catch (const YAML::BadConversion&) {
      throw ScenarioError("key '" + qualified(key) + "' has the wrong type", line_of(value));
    }
  }

  YAML::Node node_;
  std::string name_;
  std::vector<std::string> known_;
};

std::vector<LaneId> lane_list(const YAML::Node& node) {
  std::vector<LaneId> out;
  if (node.IsScalar()) {
    out.emplace_back(node.as<std::string>());
    return out;
  }
  for (const auto& item : node) out.emplace_back(item.as<std::string>());
  return out;
}

ScenarioDocument interpret(const YAML::Node& root) {
  if (!root || root.IsNull()) throw ScenarioError("scenario document is empty", 0);
  if (!root.IsMap()) throw ScenarioError("scenario document must be a mapping", line_of(root));

  static const std::vector<std::string> kSections = {
      "scenario", "geometry", "hazard", "idm", "channel", "rsu",
      "messaging", "behavior", "intersection", "sweep"};
  for (const auto& kv : root) {
    const auto key = kv.first.as<std::string>();
    if (std::find(kSections.begin(), kSections.end(), key) == kSections.end()) {
      std::string message = "unknown section '" + key + "'";
      if (auto hint = closest_match(key, kSections); !hint.empty()) {
        message += " (did you mean '" + hint + "'?)";
      }
      throw ScenarioError(message, line_of(kv.first));
    }
  }

  Section scenario(root["scenario"], "scenario");
  if (!scenario.present()) throw ScenarioError("missing required section 'scenario'", 0);
  if (!scenario.has("kind")) throw ScenarioError("missing required key 'scenario.kind'", line_of(root["scenario"]));
  if (!scenario.has("mode")) throw ScenarioError("missing required key 'scenario.mode'", line_of(root["scenario"]));

  ScenarioDocument doc;
  sim::ScenarioConfig& cfg = doc.config;
  scenario.read_with("kind", [&](const YAML::Node& n) {
    cfg = sim::ScenarioConfig::defaults(parse_scenario_kind(n.as<std::string>()));
  });
  scenario.read_with("mode", [&](const YAML::Node& n) {
    cfg.mode = policy::parse_reaction_mode(n.as<std::string>());
  });
  scenario.read("rsu_location", cfg.rsu_location_label);
  scenario.read("rsu_enabled", cfg.rsu_enabled);
  scenario.read("spawn_rate", cfg.spawn_rate);
  scenario.read("initial_speed", cfg.initial_speed);
  scenario.read("duration", cfg.duration);
  scenario.read("warmup", cfg.warmup);
  scenario.read("dt", cfg.dt);
  scenario.read("seed", cfg.seed);
  scenario.read("vehicle_length", cfg.vehicle_length);
  scenario.reject_unknown();

  Section geometry(root["geometry"], "geometry");
  geometry.read("lane_length", cfg.geometry.lane_length);
  geometry.read("exit_length", cfg.geometry.exit_length);
  geometry.read("lane_width", cfg.geometry.lane_width);
  geometry.read("zone_size", cfg.geometry.zone_size);
  geometry.read_with("rsu_offsets", [&](const YAML::Node& n) {
    const auto offsets = n.as<std::vector<double>>();
    if (offsets.size() != cfg.geometry.rsu_offsets.size()) {
      throw ScenarioError("key 'geometry.rsu_offsets' needs exactly 6 values", line_of(n));
    }
    std::copy(offsets.begin(), offsets.end(), cfg.geometry.rsu_offsets.begin());
  });
  geometry.reject_unknown();

  Section hazard(root["hazard"], "hazard");
  if (root["hazard"]) cfg.hazard.enabled = true;
  hazard.read("enabled", cfg.hazard.enabled);
  hazard.read_with("kind", [&](const YAML::Node& n) {
    cfg.hazard.kind = parse_hazard_kind(n.as<std::string>());
  });
  hazard.read_with("position", [&](const YAML::Node& n) {
    const auto xy = n.as<std::vector<double>>();
    if (xy.size() != 2) throw ScenarioError("key 'hazard.position' needs [x, y]", line_of(n));
    cfg.hazard.position = Vec2{xy[0], xy[1]};
  });
  hazard.read_with("affected_lanes", [&](const YAML::Node& n) { cfg.hazard.affected_lanes = lane_list(n); });
  hazard.read("lead", cfg.hazard.placement.lead);
  hazard.read("curb_offset", cfg.hazard.placement.curb_offset);
  hazard.read("start", cfg.hazard.start_s);
  hazard.read_optional("end", cfg.hazard.end_s);
  hazard.reject_unknown();

  Section idm(root["idm"], "idm");
  idm.read("v0", cfg.idm.v0);
  idm.read("T", cfg.idm.T);
  idm.read("s0", cfg.idm.s0);
  idm.read("a_max", cfg.idm.a_max);
  idm.read("b", cfg.idm.b);
  idm.read("delta", cfg.idm.delta);
  idm.reject_unknown();

  Section channel(root["channel"], "channel");
  channel.read("reliable_range", cfg.channel.reliable_range);
  channel.read("reliable_rate", cfg.channel.reliable_rate);
  channel.read("max_range", cfg.channel.max_range);
  channel.reject_unknown();

  Section rsu(root["rsu"], "rsu");
  rsu.read("broadcast_period", cfg.broadcast_period);
  rsu.read("camera_range", cfg.camera_range);
  rsu.reject_unknown();

  Section messaging(root["messaging"], "messaging");
  messaging.read("high_max_distance", cfg.link.high_max_distance);
  messaging.read("medium_max_distance", cfg.link.medium_max_distance);
  messaging.read("budget_high", cfg.link.budgets[0]);
  messaging.read("budget_medium", cfg.link.budgets[1]);
  messaging.read("budget_low", cfg.link.budgets[2]);
  messaging.read_with("weights", [&](const YAML::Node& n) {
    Section weights(n, "messaging.weights");
    auto& w = cfg.policy.weights;
    weights.read("human", w.human);
    weights.read("obstacle", w.obstacle);
    weights.read("vehicle_parked", w.vehicle_parked);
    weights.read("road", w.road);
    weights.read("occluded_bonus", w.occluded_bonus);
    weights.read("lane_bonus", w.lane_bonus);
    weights.read("max_bonus_lanes", w.max_bonus_lanes);
    weights.reject_unknown();
  });
  messaging.reject_unknown();

  Section behavior(root["behavior"], "behavior");
  behavior.read("speed_cap", cfg.policy.caution.speed_cap);
  behavior.read("zone_radius", cfg.policy.caution.zone_radius);
  behavior.read("hold", cfg.policy.caution.hold);
  behavior.read("horizon", cfg.policy.relevance.horizon);
  behavior.read("lateral_threshold", cfg.policy.relevance.lateral_threshold);
  behavior.reject_unknown();

  Section intersection(root["intersection"], "intersection");
  intersection.read("tau", cfg.yield.tau);
  intersection.read("approach_distance", cfg.yield.approach_distance);
  intersection.read("commit_deceleration", cfg.yield.commit_deceleration);
  intersection.reject_unknown();

  Section sweep(root["sweep"], "sweep");
  sweep.read_with("locations", [&](const YAML::Node& n) {
    doc.sweep.locations = n.IsScalar() ? parse_location_list(n.as<std::string>())
                                       : n.as<std::vector<int>>();
  });
  sweep.read_with("rates", [&](const YAML::Node& n) {
    doc.sweep.spawn_rates = n.IsScalar() ? parse_rate_list(n.as<std::string>())
                                         : n.as<std::vector<double>>();
  });
  sweep.read("seeds", doc.sweep.seeds);
  sweep.reject_unknown();
  if (doc.sweep.seeds == 0) throw ScenarioError("key 'sweep.seeds' must be at least 1", line_of(root["sweep"]));
  for (int loc : doc.sweep.locations) {
    if (loc < 1 || loc > kRsuLocationCount) {
      throw ScenarioError("key 'sweep.locations' must stay within 1..6", line_of(root["sweep"]));
    }
  }

  sim::validate(cfg);
  // Geometry is validated by building it once.
  const auto network = build_network(cfg.kind, cfg.geometry);
  for (const auto& lane : cfg.hazard.affected_lanes) {
    if (!network.has_lane(lane)) {
      throw ScenarioError("hazard.affected_lanes names unknown lane '" + lane.value + "'",
                          line_of(root["hazard"]));
    }
  }
  return doc;
}

}  // namespace

std::string closest_match(std::string_view key, const std::vector<std::string>& candidates) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& c : candidates) {
    const auto d = edit_distance(key, c);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  if (best.empty()) return {};
  const std::size_t limit = std::max<std::size_t>(2, key.size() / 3);
  return best_d <= limit ? best : std::string{};
}

ScenarioDocument parse_scenario_text(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ScenarioError("parse error: " + e.msg, e.mark.line + 1);
  }
  try {
    return interpret(root);
  } catch (const ScenarioError&) {
    throw;
  } catch (const ValidationError& e) {
    throw ScenarioError(e.what(), 0);
  } catch (const YAML::Exception& e) {
    throw ScenarioError(e.msg, e.mark.line >= 0 ? e.mark.line + 1 : 0);
  }
}

ScenarioDocument parse_scenario_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot open scenario file '" + path.string() + "'", 0);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_scenario_text(text.str());
}

sim::ScenarioConfig parse_scenario(const std::filesystem::path& path) {
  return parse_scenario_document(path).config;
}

namespace {

template <typename T>
T parse_number(std::string_view token, const char* what) {
  T value{};
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ValidationError(std::string("invalid ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find(sep, start);
    auto piece = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
    while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
    out.push_back(piece);
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

std::vector<int> parse_location_list(std::string_view text) {
  std::vector<int> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) throw ValidationError("empty entry in location list");
    const auto dash = item.find('-');
    if (dash == std::string_view::npos) {
      out.push_back(parse_number<int>(item, "location"));
      continue;
    }
    const int lo = parse_number<int>(item.substr(0, dash), "location");
    const int hi = parse_number<int>(item.substr(dash + 1), "location");
    if (lo > hi) throw ValidationError("location range '" + std::string(item) + "' is reversed");
    for (int l = lo; l <= hi; ++l) out.push_back(l);
  }
  for (int l : out) {
    if (l < 1 || l > kRsuLocationCount) throw ValidationError("locations must be in 1..6");
  }
  return out;
}

std::vector<double> parse_rate_list(std::string_view text) {
  std::vector<double> out;
  for (auto item : split(text, ',')) {
    if (item.empty()) throw ValidationError("empty entry in rate list");
    const double r = parse_number<double>(item, "rate");
    if (!(r > 0.0)) throw ValidationError("spawn rates must be positive");
    out.push_back(r);
  }
  return out;
}

}  // namespace seev2x::io
