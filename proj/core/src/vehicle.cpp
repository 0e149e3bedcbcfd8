#include "seev2x/vehicle.hpp"

#include <cmath>

#include "seev2x/errors.hpp"

namespace seev2x {

std::vector<Vec2> predicted_path(const VehicleState& v, double horizon, const RoadNetwork& network) {
  if (!(horizon > 0.0)) throw ValidationError("predicted_path horizon must be positive");
  std::vector<Vec2> path{embed(v.pos, network)};
  if (v.speed <= 0.0) return path;

  const auto samples = static_cast<int>(std::floor(horizon / kPathSampleSpacing + 1e-9));
  for (int k = 1; k <= samples; ++k) {
    const double ahead = v.speed * kPathSampleSpacing * k;
    const auto at = advance_along_route(network, v.route, v.pos, ahead);
    if (!at) {
      const Lane& last = network.lane(v.route.back());
      path.push_back(last.polyline.back());
      break;
    }
    path.push_back(embed(at->pos, network));
  }
  return path;
}

}  // namespace seev2x
