#include <gtest/gtest.h>

#include "seev2x/simulation.hpp"

namespace seev2x::sim {
namespace {

VehicleState approaching(const RoadNetwork& net, const char* lane, double offset, double speed,
                         std::uint64_t id) {
  VehicleState v;
  v.id = VehicleId{id};
  v.pos = {LaneId{lane}, offset};
  v.speed = speed;
  v.route = net.through_route(LaneId{lane});
  return v;
}

std::optional<double> yield_of(const VehicleState& v, const std::vector<VehicleState>& others,
                               const RoadNetwork& net) {
  return intersection_yield(v, others, net, idm::IdmParams{}, YieldParams{}, 5.0);
}

TEST(ZoneRelation, DistancesToEntryAndExit) {
  auto net = build_network(ScenarioKind::intersection);
  auto rel = zone_relation(approaching(net, "a", 350, 10, 0), net);
  ASSERT_TRUE(rel.has_value());
  EXPECT_NEAR(rel->entry, 40.0, 1e-9);
  EXPECT_NEAR(rel->exit, 60.0, 1e-9);
  auto exp = build_network(ScenarioKind::expressway);
  EXPECT_FALSE(zone_relation(approaching(exp, "1", 10, 10, 0), exp).has_value());
}

TEST(Yield, EmptyCrossTrafficNoOverride) {
  auto net = build_network(ScenarioKind::intersection);
  auto v = approaching(net, "a", 350, 10, 1);
  EXPECT_FALSE(yield_of(v, {}, net).has_value());
  // Same-axis traffic is not cross traffic.
  EXPECT_FALSE(yield_of(v, {approaching(net, "b", 380, 10, 2)}, net).has_value());
}

TEST(Yield, CrossingVehicleOneSecondAwayHoldsEastWest) {
  auto net = build_network(ScenarioKind::intersection);
  auto a = approaching(net, "a", 350, 10, 1);
  auto c = approaching(net, "c", 380, 10, 2);  // 10 m from the line at 10 m/s
  auto acc = yield_of(a, {c}, net);
  ASSERT_TRUE(acc.has_value());
  EXPECT_LT(*acc, 0.0);
  // With the line as a standing leader 40 m ahead.
  const double want = idm::idm_acceleration(10, 40, 10, idm::IdmParams{});
  EXPECT_NEAR(*acc, want, 1e-9);
}

TEST(Yield, SimultaneousArrivalNorthSouthProceeds) {
  auto net = build_network(ScenarioKind::intersection);
  auto a = approaching(net, "a", 360, 10, 1);
  auto c = approaching(net, "c", 360, 10, 2);
  EXPECT_TRUE(yield_of(a, {c}, net).has_value());
  EXPECT_FALSE(yield_of(c, {a}, net).has_value());
}

TEST(Yield, CommittedEastWestHoldsNorthSouth) {
  auto net = build_network(ScenarioKind::intersection);
  auto a = approaching(net, "a", 385, 15, 1);  // 5 m out at 15 m/s: cannot stop
  auto c = approaching(net, "c", 370, 10, 2);
  EXPECT_TRUE(yield_of(c, {a}, net).has_value());
}

TEST(Yield, OccupiedZoneHoldsEveryone) {
  auto net = build_network(ScenarioKind::intersection);
  auto in_zone = approaching(net, "a", 395, 3, 1);
  auto c = approaching(net, "c", 360, 10, 2);
  EXPECT_TRUE(yield_of(c, {in_zone}, net).has_value());
}

TEST(Yield, FarVehiclesIgnored) {
  auto net = build_network(ScenarioKind::intersection);
  auto a = approaching(net, "a", 200, 10, 1);  // 190 m from the zone
  auto c = approaching(net, "c", 385, 10, 2);
  EXPECT_FALSE(yield_of(a, {c}, net).has_value());
  auto a_near = approaching(net, "a", 360, 10, 1);
  auto c_far = approaching(net, "c", 300, 10, 2);  // 9 s away
  EXPECT_FALSE(yield_of(a_near, {c_far}, net).has_value());
}

}  // namespace
}  // namespace seev2x::sim
