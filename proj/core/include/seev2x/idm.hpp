#pragma once

#include <optional>

#include "seev2x/vehicle.hpp"

namespace seev2x::idm {

struct IdmParams {
  double v0 = 20.0;    // desired speed, m/s
  double T = 1.5;      // safe time headway, s
  double s0 = 2.0;     // jam gap, m
  double a_max = 0.73; // maximum acceleration, m/s^2
  double b = 1.67;     // comfortable deceleration, m/s^2
  double delta = 4.0;  // acceleration exponent

  friend bool operator==(const IdmParams&, const IdmParams&) = default;
};

/// Throws ValidationError unless every parameter is positive and delta >= 1.
void validate(const IdmParams& p);

inline constexpr double kFreeRoadGap = 1e6;  // m, stand-in gap for "no leader"
inline constexpr double kMaxBraking = 9.0;   // m/s^2, physical limit
inline constexpr double kMaxAcceleration = 5.0;

/// s*(v, dv) = s0 + max(0, v*T + v*dv / (2*sqrt(a_max*b))). `dv` is the
/// closing speed (own speed minus leader speed).
double desired_gap(double v, double dv, const IdmParams& p);

/// a = a_max * (1 - (v/v0)^delta - (s*/gap)^2), clamped below at -9 m/s^2.
/// Throws CollisionFault when gap <= 0.
double idm_acceleration(double v, double gap, double dv, const IdmParams& p);

struct Leader {
  double gap = kFreeRoadGap;  // m, leader rear to own front
  double speed = 0.0;         // m/s
};

/// One semi-implicit Euler tick: speed' = max(0, speed + a*dt), then
/// offset' = offset + speed'*dt. `accel_cap` (from an external constraint
/// such as intersection yielding) bounds the IDM acceleration from above.
/// The returned offset may run past the current lane end; the caller carries
/// it over onto the route.
VehicleState step(const VehicleState& v, std::optional<Leader> leader, double dt,
                  const IdmParams& p_effective, std::optional<double> accel_cap = std::nullopt);

}  // namespace seev2x::idm
