#include "seev2x/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "seev2x/errors.hpp"

namespace seev2x::sim {

namespace {

constexpr std::uint64_t kSpawnStreamTag = 0x5350415721ULL;    // "SPAWN"
constexpr std::uint64_t kChannelStreamTag = 0x4348414e4eULL;  // "CHANN"
constexpr double kTimeEps = 1e-9;
constexpr double kLeaderLookahead = 1000.0;  // m

void require(bool ok, const std::string& message) {
  if (!ok) throw ValidationError(message);
}

double resolved_hazard_end(const ScenarioConfig& cfg) {
  return cfg.hazard.end_s.value_or(cfg.duration);
}

using SpanLookup = std::map<LaneId, std::optional<std::pair<double, double>>>;

SpanLookup zone_spans(const RoadNetwork& network) {
  SpanLookup out;
  for (const auto& lane : network.lanes) out[lane.id] = network.zone_span(lane.id);
  return out;
}

struct ZoneView {
  ZoneRelation rel;
  Axis axis = Axis::east_west;
};

std::optional<ZoneView> zone_view(const VehicleState& v, const RoadNetwork& network,
                                  const SpanLookup& spans) {
  double before = -v.pos.offset;
  std::optional<ZoneView> out;
  for (const auto& id : v.route) {
    const auto& span = spans.at(id);
    if (span) {
      if (!out) {
        out = ZoneView{{before + span->first, before + span->second}, network.axis(id)};
      } else {
        out->rel.exit = before + span->second;
      }
    } else if (out) {
      break;
    }
    before += network.lane(id).length;
  }
  return out;
}

struct Participant {
  VehicleId id{};
  double speed = 0.0;
  std::optional<ZoneView> zone;
};

class YieldRule {
 public:
  YieldRule(const idm::IdmParams& p, const YieldParams& y, double length)
      : p_(p), y_(y), length_(length) {}

  bool occupying(const Participant& w) const {
    return w.zone && w.zone->rel.entry <= 0.0 && w.zone->rel.exit + length_ > 0.0;
  }

  bool approaching(const Participant& w) const { return w.zone && w.zone->rel.entry > 0.0; }

  bool committed(const Participant& w) const {
    return approaching(w) && w.zone->rel.entry <= y_.approach_distance &&
           w.zone->rel.entry < w.speed * w.speed / (2.0 * y_.commit_deceleration);
  }

  double arrival(const Participant& w) const {
    const double entry = w.zone->rel.entry;
    if (entry <= p_.s0 + 1.0 && w.speed < 0.5) return 0.0;  // waiting at the line
    if (w.speed <= 0.0) return std::numeric_limits<double>::infinity();
    return entry / w.speed;
  }

  bool precedes(const Participant& w, const Participant& v) const {
    if (w.zone->axis != v.zone->axis) return w.zone->axis == Axis::north_south;
    const double tw = arrival(w);
    const double tv = arrival(v);
    if (tw != tv) return tw < tv;
    return to_underlying(w.id) < to_underlying(v.id);
  }

  bool must_yield(const Participant& v, std::span<const Participant> others) const {
    if (!approaching(v) || v.zone->rel.entry > y_.approach_distance || committed(v)) return false;
    for (const auto& w : others) {
      if (w.id == v.id || !w.zone || w.zone->axis == v.zone->axis) continue;
      if (occupying(w) || committed(w)) return true;
      if (approaching(w) && arrival(w) <= y_.tau && precedes(w, v)) return true;
    }
    return false;
  }

  double hold_acceleration(const Participant& v, const idm::IdmParams& p_eff) const {
    const double gap = std::max(v.zone->rel.entry, 0.01);
    return idm::idm_acceleration(v.speed, gap, v.speed, p_eff);
  }

 private:
  idm::IdmParams p_;
  YieldParams y_;
  double length_;
};

}  // namespace

ScenarioConfig ScenarioConfig::defaults(ScenarioKind kind) {
  ScenarioConfig cfg;
  cfg.kind = kind;
  cfg.geometry = GeometryParams::defaults_for(kind);
  return cfg;
}

void validate(const ScenarioConfig& cfg) {
  require(std::isfinite(cfg.spawn_rate) && cfg.spawn_rate > 0.0, "spawn_rate must be positive");
  require(std::isfinite(cfg.duration) && cfg.duration > 0.0, "duration must be positive");
  require(std::isfinite(cfg.dt) && cfg.dt > 0.0, "dt must be positive");
  require(std::isfinite(cfg.warmup) && cfg.warmup >= 0.0, "warmup must be non-negative");
  require(cfg.duration > cfg.warmup, "duration must exceed warmup");
  require(std::isfinite(cfg.initial_speed) && cfg.initial_speed >= 0.0,
          "initial_speed must be non-negative");
  require(cfg.vehicle_length > 0.0, "vehicle_length must be positive");
  require(cfg.rsu_location_label >= 1 && cfg.rsu_location_label <= kRsuLocationCount,
          "rsu_location must be in 1..6");
  require(cfg.broadcast_period > 0.0, "broadcast_period must be positive");
  require(cfg.camera_range > 0.0, "camera_range must be positive");
  require(cfg.yield.tau > 0.0, "tau must be positive");
  require(cfg.yield.approach_distance > 0.0, "approach_distance must be positive");
  require(cfg.yield.commit_deceleration > 0.0, "commit_deceleration must be positive");
  idm::validate(cfg.idm);
  radio::validate(cfg.channel);
  msg::validate(cfg.link);
  policy::validate(cfg.policy, cfg.idm.v0);
  if (cfg.hazard.enabled) {
    require(cfg.hazard.start_s >= 0.0, "hazard start must be non-negative");
    require(cfg.hazard.start_s < resolved_hazard_end(cfg), "hazard start must precede its end");
    if (cfg.hazard.position) {
      require(!cfg.hazard.affected_lanes.empty(),
              "hazard affected_lanes is required with an explicit position");
    }
  }
}

std::vector<Arrival> draw_arrivals(std::size_t entry_lane_count, double rate, double horizon,
                                   std::uint64_t seed) {
  std::vector<Arrival> out;
  for (std::size_t lane = 0; lane < entry_lane_count; ++lane) {
    RandomStream rng(derive_seed(seed, {kSpawnStreamTag, lane}));
    double t = rng.exponential(rate);
    while (t < horizon) {
      out.push_back({t, lane, VehicleId{0}});
      t += rng.exponential(rate);
    }
  }
  std::sort(out.begin(), out.end(), [](const Arrival& a, const Arrival& b) {
    return a.time != b.time ? a.time < b.time : a.lane_index < b.lane_index;
  });
  for (std::size_t i = 0; i < out.size(); ++i) out[i].id = VehicleId{i};
  return out;
}

std::optional<ZoneRelation> zone_relation(const VehicleState& v, const RoadNetwork& network) {
  if (!network.conflict_zone) return std::nullopt;
  const auto view = zone_view(v, network, zone_spans(network));
  if (!view) return std::nullopt;
  return view->rel;
}

std::optional<double> intersection_yield(const VehicleState& v, std::span<const VehicleState> others,
                                         const RoadNetwork& network, const idm::IdmParams& p,
                                         const YieldParams& y, double vehicle_length) {
  if (!network.conflict_zone) return std::nullopt;
  const auto spans = zone_spans(network);
  const Participant self{v.id, v.speed, zone_view(v, network, spans)};
  std::vector<Participant> crowd;
  crowd.reserve(others.size());
  for (const auto& o : others) crowd.push_back({o.id, o.speed, zone_view(o, network, spans)});
  const YieldRule rule(p, y, vehicle_length);
  if (!rule.must_yield(self, crowd)) return std::nullopt;
  return rule.hold_acceleration(self, p);
}

// ---- Simulation --------------------------------------------------------------

Simulation::Simulation(const ScenarioConfig& cfg)
    : Simulation(cfg, [&] {
        validate(cfg);
        return std::make_shared<const RoadNetwork>(build_network(cfg.kind, cfg.geometry));
      }()) {}

Simulation::Simulation(const ScenarioConfig& cfg, std::shared_ptr<const RoadNetwork> network)
    : cfg_(cfg), network_(std::move(network)) {
  validate(cfg_);
  if (!network_) throw ValidationError("simulation needs a road network");
  if (network_->kind != cfg_.kind) throw ValidationError("network kind does not match scenario kind");

  entry_lanes_ = network_->entry_lanes();
  queues_.resize(entry_lanes_.size());

  if (cfg_.rsu_enabled) {
    rsus_.push_back(make_rsu(*network_, cfg_.rsu_location_label, cfg_.broadcast_period,
                             cfg_.camera_range));
  }
  if (cfg_.hazard.enabled) {
    const double end = resolved_hazard_end(cfg_);
    HazardEvent h;
    if (cfg_.hazard.position) {
      h.kind = cfg_.hazard.kind;
      h.position = *cfg_.hazard.position;
      h.affected_lanes = cfg_.hazard.affected_lanes;
      std::sort(h.affected_lanes.begin(), h.affected_lanes.end());
      h.affected_lanes.erase(std::unique(h.affected_lanes.begin(), h.affected_lanes.end()),
                             h.affected_lanes.end());
      h.start_s = cfg_.hazard.start_s;
      h.end_s = end;
      seev2x::validate(h, *network_);
    } else {
      h = default_hazard(*network_, cfg_.rsu_location_label, cfg_.hazard.placement,
                         cfg_.hazard.start_s, end);
      h.kind = cfg_.hazard.kind;
    }
    hazards_.push_back(std::move(h));
  }

  zone_spans_ = zone_spans(*network_);
  total_ticks_ = static_cast<std::uint64_t>(std::llround(cfg_.duration / cfg_.dt));
  arrivals_ = draw_arrivals(entry_lanes_.size(), cfg_.spawn_rate, cfg_.duration, cfg_.seed);
}

std::vector<VehicleState> Simulation::vehicles() const {
  std::vector<VehicleState> out;
  out.reserve(agents_.size());
  for (const auto& a : agents_) out.push_back(a.state);
  return out;
}

std::size_t Simulation::queued_count() const {
  std::size_t n = 0;
  for (const auto& q : queues_) n += q.size();
  return n;
}

const msg::SceneDescription& Simulation::scene_for(const radio::BroadcastEvent& e) {
  const auto key = std::pair{e.rsu_label, e.hazard};
  auto it = scenes_.find(key);
  if (it == scenes_.end()) {
    const auto rsu = std::find_if(rsus_.begin(), rsus_.end(),
                                  [&](const RsuNode& r) { return r.location_label == e.rsu_label; });
    it = scenes_.emplace(key, msg::scene_for_hazard(*e.hazard, *rsu, *network_)).first;
  }
  return it->second;
}

void Simulation::tick() {
  const double now = this->now();
  const double t_end = static_cast<double>(tick_index_ + 1) * cfg_.dt;
  const bool in_window = t_end > cfg_.warmup + kTimeEps;

  try {
    // 1-2. hazard activation is folded into the broadcast schedule, which
    // only emits inside each hazard's active interval.
    const auto events = radio::due_broadcasts(rsus_, hazards_, {now, t_end});
    // 3. delivery and reaction
    deliver(events, now, in_window);
    // 4. expiry
    for (auto& a : agents_) {
      if (a.state.active_caution && now >= a.state.active_caution->expires) {
        a.state.active_caution.reset();
      }
    }
    // 5-7. yield, integrate, despawn
    advance(now);
  } catch (const CollisionFault& fault) {
    metrics_.collision = true;
    metrics_.fault = fault.what();
    throw;
  }
  // 8. spawn
  spawn(now);
  // 9. metrics
  record(t_end);
  ++tick_index_;
}

void Simulation::deliver(std::span<const radio::BroadcastEvent> events, double now, bool in_window) {
  for (const auto& e : events) {
    std::array<std::optional<msg::SemanticMessage>, 3> encoded;
    for (auto& agent : agents_) {
      const Vec2 pos = embed(agent.state.pos, *network_);
      if (!radio::try_deliver(e, pos, cfg_.channel, agent.channel_rng)) continue;

      std::optional<CautionCommand> command;
      if (cfg_.mode == policy::ReactionMode::traditional) {
        command = policy::on_receive(agent.state, e.payload, cfg_.mode, now, cfg_.policy, *network_);
      } else {
        const auto level = msg::query_link_quality(distance(e.origin, pos), cfg_.link);
        auto& slot = encoded[static_cast<std::size_t>(level.level)];
        if (!slot) slot = msg::encode_semantic(scene_for(e), level, e.tx_time, cfg_.policy.weights);
        command = policy::on_receive(agent.state, radio::Payload{*slot}, cfg_.mode, now, cfg_.policy,
                                     *network_);
      }
      if (!command) continue;
      auto& held = agent.state.active_caution;
      if ((!held || now >= held->expires) && in_window) ++metrics_.caution_activations;
      held = *command;
    }
  }
}

void Simulation::advance(double now) {
  const RoadNetwork& net = *network_;
  const std::size_t n = agents_.size();

  std::vector<idm::IdmParams> params(n, cfg_.idm);
  for (std::size_t i = 0; i < n; ++i) {
    params[i].v0 = policy::effective_desired_speed(agents_[i].state, now, cfg_.idm.v0, net);
  }

  // 5. intersection yield
  std::vector<std::optional<double>> caps(n);
  if (net.conflict_zone) {
    const SpanLookup& spans = zone_spans_;
    std::vector<Participant> crowd;
    crowd.reserve(n);
    for (const auto& a : agents_) {
      crowd.push_back({a.state.id, a.state.speed, zone_view(a.state, net, spans)});
    }
    const YieldRule rule(cfg_.idm, cfg_.yield, cfg_.vehicle_length);
    for (std::size_t i = 0; i < n; ++i) {
      if (rule.must_yield(crowd[i], crowd)) caps[i] = rule.hold_acceleration(crowd[i], params[i]);
    }
  }

  // 6. leaders and integration
  std::map<LaneId, std::vector<std::size_t>> by_lane;
  for (std::size_t i = 0; i < n; ++i) by_lane[agents_[i].state.pos.lane].push_back(i);
  for (auto& [lane, idx] : by_lane) {
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      const auto& sa = agents_[a].state;
      const auto& sb = agents_[b].state;
      if (sa.pos.offset != sb.pos.offset) return sa.pos.offset < sb.pos.offset;
      return to_underlying(sa.id) > to_underlying(sb.id);
    });
  }

  const auto find_leader = [&](std::size_t i) -> std::optional<std::pair<std::size_t, double>> {
    const VehicleState& v = agents_[i].state;
    const auto& same = by_lane.at(v.pos.lane);
    const auto me = std::find(same.begin(), same.end(), i);
    if (me + 1 != same.end()) {
      const auto& l = agents_[*(me + 1)].state;
      return std::pair{*(me + 1), l.pos.offset - v.pos.offset - cfg_.vehicle_length};
    }
    double ahead = net.lane(v.pos.lane).length - v.pos.offset;
    for (std::size_t r = 1; r < v.route.size() && ahead < kLeaderLookahead; ++r) {
      auto it = by_lane.find(v.route[r]);
      if (it != by_lane.end() && !it->second.empty()) {
        const auto j = it->second.front();
        return std::pair{j, ahead + agents_[j].state.pos.offset - cfg_.vehicle_length};
      }
      ahead += net.lane(v.route[r]).length;
    }
    return std::nullopt;
  };

  std::vector<VehicleState> next(n);
  for (std::size_t i = 0; i < n; ++i) {
    const VehicleState& v = agents_[i].state;
    std::optional<idm::Leader> leader;
    const auto found = find_leader(i);
    if (found) leader = idm::Leader{found->second, agents_[found->first].state.speed};
    try {
      next[i] = idm::step(v, leader, cfg_.dt, params[i], caps[i]);
    } catch (const CollisionFault&) {
      std::ostringstream os;
      os << "collision at t=" << now << " s: vehicle " << to_underlying(v.id) << " on lane "
         << v.pos.lane.value << " at offset " << v.pos.offset << " m, gap "
         << (found ? found->second : 0.0) << " m to vehicle "
         << (found ? to_underlying(agents_[found->first].state.id) : 0);
      throw CollisionFault(os.str());
    }
  }

  // 7. carry over onto the route; drop vehicles past its end
  std::vector<Agent> kept;
  kept.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    VehicleState& v = next[i];
    bool done = false;
    while (v.pos.offset > net.lane(v.pos.lane).length) {
      if (v.route.size() <= 1) {
        done = true;
        break;
      }
      v.pos.offset -= net.lane(v.pos.lane).length;
      v.route.erase(v.route.begin());
      v.pos.lane = v.route.front();
    }
    if (done) {
      ++completed_;
      continue;
    }
    kept.push_back({std::move(v), std::move(agents_[i].channel_rng)});
  }
  agents_ = std::move(kept);
}

void Simulation::spawn(double now) {
  const double t_end = static_cast<double>(tick_index_ + 1) * cfg_.dt;
  while (next_arrival_ < arrivals_.size() && arrivals_[next_arrival_].time < t_end) {
    const Arrival& a = arrivals_[next_arrival_++];
    queues_[a.lane_index].push_back(a);
    ++arrived_;
  }
  const double clearance = cfg_.idm.s0 + cfg_.initial_speed * cfg_.idm.T;
  for (std::size_t lane = 0; lane < entry_lanes_.size(); ++lane) {
    auto& queue = queues_[lane];
    if (queue.empty()) continue;
    double rearmost = std::numeric_limits<double>::infinity();
    for (const auto& agent : agents_) {
      if (agent.state.pos.lane == entry_lanes_[lane]) {
        rearmost = std::min(rearmost, agent.state.pos.offset - cfg_.vehicle_length);
      }
    }
    if (rearmost < clearance) continue;

    const Arrival a = queue.front();
    queue.pop_front();
    VehicleState v;
    v.id = a.id;
    v.pos = {entry_lanes_[lane], 0.0};
    v.speed = cfg_.initial_speed;
    v.route = network_->through_route(entry_lanes_[lane]);
    v.spawn_time = now + cfg_.dt;
    Agent agent{std::move(v), RandomStream(derive_seed(cfg_.seed, {kChannelStreamTag,
                                                                    to_underlying(a.id)}))};
    const auto pos = std::lower_bound(agents_.begin(), agents_.end(), a.id,
                                      [](const Agent& x, VehicleId id) {
                                        return to_underlying(x.state.id) < to_underlying(id);
                                      });
    agents_.insert(pos, std::move(agent));
  }
}

void Simulation::record(double t) {
  TickMetrics row;
  row.time = t;
  row.active = agents_.size();
  double sum = 0.0;
  for (const auto& a : agents_) {
    sum += a.state.speed;
    if (a.state.active_caution) ++row.cautioned;
  }
  row.mean_speed = row.active ? sum / static_cast<double>(row.active) : 0.0;
  metrics_.ticks.push_back(row);
  if (t > cfg_.warmup + kTimeEps) {
    speed_sum_in_window_ += sum;
    samples_in_window_ += row.active;
  }
  if (arrived_ != agents_.size() + completed_ + queued_count()) {
    throw std::logic_error("vehicle conservation violated");
  }
}

MetricsRecord Simulation::metrics() const {
  MetricsRecord out = metrics_;
  out.completed_trips = completed_;
  out.vehicle_seconds = static_cast<double>(samples_in_window_) * cfg_.dt;
  out.weighted_mean_speed =
      samples_in_window_ ? speed_sum_in_window_ / static_cast<double>(samples_in_window_) : 0.0;
  return out;
}

MetricsRecord simulate(const ScenarioConfig& cfg, std::shared_ptr<const RoadNetwork> network) {
  Simulation sim(cfg, std::move(network));
  try {
    while (!sim.finished()) sim.tick();
  } catch (const CollisionFault&) {
  }
  return sim.metrics();
}

MetricsRecord simulate(const ScenarioConfig& cfg) {
  validate(cfg);
  return simulate(cfg, std::make_shared<const RoadNetwork>(build_network(cfg.kind, cfg.geometry)));
}

MetricsRecord run(const ScenarioConfig& cfg, std::shared_ptr<const RoadNetwork> network) {
  auto record = simulate(cfg, std::move(network));
  if (record.collision) throw CollisionFault(record.fault);
  return record;
}

MetricsRecord run(const ScenarioConfig& cfg) {
  auto record = simulate(cfg);
  if (record.collision) throw CollisionFault(record.fault);
  return record;
}

}  // namespace seev2x::sim
