#include "seev2x/channel.hpp"

#include <algorithm>
#include <cmath>

#include "seev2x/errors.hpp"

namespace seev2x::radio {

void validate(const ChannelModel& c) {
  if (!(c.reliable_range > 0.0) || !(c.max_range > c.reliable_range)) {
    throw ValidationError("channel ranges must satisfy 0 < reliable_range < max_range");
  }
  if (!(c.reliable_rate > 0.0) || c.reliable_rate > 1.0) {
    throw ValidationError("channel reliable_rate must be in (0, 1]");
  }
}

double reception_probability(double distance, const ChannelModel& c) {
  if (distance <= c.reliable_range) return c.reliable_rate;
  if (distance >= c.max_range) return 0.0;
  const double frac = (c.max_range - distance) / (c.max_range - c.reliable_range);
  return c.reliable_rate * frac;
}

bool try_deliver(const BroadcastEvent& event, Vec2 receiver_pos, const ChannelModel& c,
                 RandomStream& rng) {
  const double u = rng.uniform();
  return u < reception_probability(distance(event.origin, receiver_pos), c);
}

namespace {

// First schedule index k with start + k*period >= t.
std::int64_t first_slot_at_or_after(double t, double start, double period) {
  return static_cast<std::int64_t>(std::ceil((t - start) / period - 1e-9));
}

}  // namespace

std::vector<BroadcastEvent> due_broadcasts(std::span<const RsuNode> rsus,
                                           std::span<const HazardEvent> hazards, TimeWindow window) {
  std::vector<BroadcastEvent> out;
  for (const auto& rsu : rsus) {
    const HazardEvent* seen = nullptr;
    for (const auto& h : hazards) {
      const bool active_in_window = h.start_s < window.end && h.end_s > window.begin;
      if (active_in_window && distance(h.position, rsu.position) <= rsu.camera_range) {
        seen = &h;
        break;
      }
    }
    if (!seen) continue;

    const double from = std::max(window.begin, seen->start_s);
    const double to = std::min(window.end, seen->end_s);
    if (!(to > from)) continue;
    const auto k_begin = std::max<std::int64_t>(
        0, first_slot_at_or_after(from, seen->start_s, rsu.broadcast_period));
    const auto k_end = first_slot_at_or_after(to, seen->start_s, rsu.broadcast_period);
    for (auto k = k_begin; k < k_end; ++k) {
      BroadcastEvent e;
      e.rsu_label = rsu.location_label;
      e.origin = rsu.position;
      e.tx_time = seen->start_s + static_cast<double>(k) * rsu.broadcast_period;
      e.sequence = static_cast<std::uint64_t>(k);
      e.payload = msg::TraditionalAlert{seen->position, seen->kind, e.tx_time};
      e.hazard = seen;
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace seev2x::radio
