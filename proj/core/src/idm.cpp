#include "seev2x/idm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seev2x/errors.hpp"

namespace seev2x::idm {

void validate(const IdmParams& p) {
  auto positive = [](double x, const char* name) {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw ValidationError(std::string("IDM parameter '") + name + "' must be positive");
    }
  };
  positive(p.v0, "v0");
  positive(p.T, "T");
  positive(p.s0, "s0");
  positive(p.a_max, "a_max");
  positive(p.b, "b");
  if (!(p.delta >= 1.0)) throw ValidationError("IDM parameter 'delta' must be >= 1");
}

double desired_gap(double v, double dv, const IdmParams& p) {
  const double dynamic = v * p.T + v * dv / (2.0 * std::sqrt(p.a_max * p.b));
  return p.s0 + std::max(0.0, dynamic);
}

double idm_acceleration(double v, double gap, double dv, const IdmParams& p) {
  if (!(gap > 0.0)) {
    throw CollisionFault("gap to leader is " + std::to_string(gap) + " m");
  }
  const double free_term = std::pow(v / p.v0, p.delta);
  const double interaction = desired_gap(v, dv, p) / gap;
  const double a = p.a_max * (1.0 - free_term - interaction * interaction);
  return std::clamp(a, -kMaxBraking, p.a_max);
}

VehicleState step(const VehicleState& v, std::optional<Leader> leader, double dt,
                  const IdmParams& p_effective, std::optional<double> accel_cap) {
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  const Leader l = leader.value_or(Leader{kFreeRoadGap, v.speed});
  double a = idm_acceleration(v.speed, l.gap, v.speed - l.speed, p_effective);
  if (accel_cap) a = std::min(a, *accel_cap);
  a = std::clamp(a, -kMaxBraking, kMaxAcceleration);

  VehicleState out = v;
  out.accel = a;
  out.speed = std::max(0.0, v.speed + a * dt);
  out.pos.offset = v.pos.offset + out.speed * dt;
  return out;
}

}  // namespace seev2x::idm
