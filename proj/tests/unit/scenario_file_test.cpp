#include <gtest/gtest.h>

#include <string>

#include "seev2x/scenario_file.hpp"

namespace seev2x::io {
namespace {

std::string error_of(std::string_view text) {
  try {
    parse_scenario_text(text);
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return {};
}

TEST(ScenarioFile, MinimalDocumentFillsDefaults) {
  auto doc = parse_scenario_text(
      "scenario:\n"
      "  kind: intersection\n"
      "  mode: traditional\n"
      "hazard: {}\n");
  const auto& c = doc.config;
  auto want = sim::ScenarioConfig::defaults(ScenarioKind::intersection);
  EXPECT_EQ(c.kind, ScenarioKind::intersection);
  EXPECT_EQ(c.mode, policy::ReactionMode::traditional);
  EXPECT_TRUE(c.hazard.enabled);
  EXPECT_EQ(c.geometry, want.geometry);
  EXPECT_EQ(c.idm, want.idm);
  EXPECT_EQ(c.channel, want.channel);
  EXPECT_DOUBLE_EQ(c.spawn_rate, want.spawn_rate);
  EXPECT_DOUBLE_EQ(c.duration, 300.0);
  EXPECT_DOUBLE_EQ(c.warmup, 60.0);
  EXPECT_DOUBLE_EQ(c.dt, 0.1);
  EXPECT_DOUBLE_EQ(c.initial_speed, 20.0);
  EXPECT_DOUBLE_EQ(c.policy.caution.speed_cap, 5.0);
  EXPECT_EQ(doc.sweep.locations, (std::vector<int>{1, 2, 3, 4, 5, 6}));
}

TEST(ScenarioFile, OverridesApplied) {
  auto doc = parse_scenario_text(
      "scenario: {kind: expressway, mode: semantic, rsu_location: 4, spawn_rate: 0.25, seed: 99}\n"
      "idm: {v0: 25, T: 1.2}\n"
      "behavior: {speed_cap: 7, hold: 3}\n"
      "messaging: {budget_low: 1, weights: {human: 200}}\n"
      "hazard: {kind: obstacle, position: [300, -2], affected_lanes: [\"1\"], start: 30, end: 90}\n"
      "sweep: {locations: \"1-2,5\", rates: [0.05, 0.1], seeds: 12}\n");
  const auto& c = doc.config;
  EXPECT_EQ(c.rsu_location_label, 4);
  EXPECT_DOUBLE_EQ(c.spawn_rate, 0.25);
  EXPECT_EQ(c.seed, 99u);
  EXPECT_DOUBLE_EQ(c.idm.v0, 25.0);
  EXPECT_DOUBLE_EQ(c.idm.T, 1.2);
  EXPECT_DOUBLE_EQ(c.policy.caution.speed_cap, 7.0);
  EXPECT_DOUBLE_EQ(c.policy.caution.hold, 3.0);
  EXPECT_EQ(c.link.budgets[2], 1u);
  EXPECT_DOUBLE_EQ(c.policy.weights.human, 200.0);
  EXPECT_EQ(c.hazard.kind, HazardKind::obstacle);
  ASSERT_TRUE(c.hazard.position.has_value());
  EXPECT_EQ(*c.hazard.position, (Vec2{300, -2}));
  EXPECT_EQ(c.hazard.affected_lanes, std::vector<LaneId>{LaneId{"1"}});
  EXPECT_DOUBLE_EQ(c.hazard.start_s, 30.0);
  EXPECT_EQ(c.hazard.end_s, 90.0);
  EXPECT_EQ(doc.sweep.locations, (std::vector<int>{1, 2, 5}));
  EXPECT_EQ(doc.sweep.spawn_rates, (std::vector<double>{0.05, 0.1}));
  EXPECT_EQ(doc.sweep.seeds, 12u);
}

TEST(ScenarioFile, NegativeSpawnRateNamesField) {
  auto msg = error_of("scenario:\n  kind: expressway\n  mode: semantic\n  spawn_rate: -1\n");
  EXPECT_NE(msg.find("spawn_rate"), std::string::npos) << msg;
}

TEST(ScenarioFile, UnknownKeySuggestsClosest) {
  auto msg = error_of(
      "scenario:\n  kind: expressway\n  mode: semantic\n"
      "behavior:\n  speedcap: 4\n");
  EXPECT_NE(msg.find("speedcap"), std::string::npos) << msg;
  EXPECT_NE(msg.find("speed_cap"), std::string::npos) << msg;
  EXPECT_NE(msg.find("line 5"), std::string::npos) << msg;
}

TEST(ScenarioFile, UnknownSectionRejected) {
  auto msg = error_of("scenario: {kind: expressway, mode: semantic}\nchanel: {}\n");
  EXPECT_NE(msg.find("channel"), std::string::npos) << msg;
}

TEST(ScenarioFile, MissingRequiredKeys) {
  EXPECT_NE(error_of("scenario: {kind: expressway}\n").find("mode"), std::string::npos);
  EXPECT_NE(error_of("scenario: {mode: semantic}\n").find("kind"), std::string::npos);
  EXPECT_FALSE(error_of("").empty());
}

TEST(ScenarioFile, BadValuesRejected) {
  EXPECT_FALSE(error_of("scenario: {kind: highway, mode: semantic}\n").empty());
  EXPECT_FALSE(error_of("scenario: {kind: expressway, mode: fast}\n").empty());
  EXPECT_FALSE(error_of("scenario: {kind: expressway, mode: semantic, duration: abc}\n").empty());
  EXPECT_FALSE(error_of("scenario: {kind: expressway, mode: semantic, duration: 30}\n").empty());
  EXPECT_FALSE(error_of("scenario: [1, 2]\n").empty());
  EXPECT_FALSE(error_of("scenario: {kind: expressway, mode: semantic}\n"
                        "hazard: {position: [1, 2]}\n").empty());
  EXPECT_FALSE(error_of("scenario: {kind: expressway, mode: semantic}\n"
                        "hazard: {position: [1, 2], affected_lanes: [zz]}\n").empty());
  EXPECT_FALSE(error_of("{{{").empty());
}

TEST(ListParsing, Locations) {
  EXPECT_EQ(parse_location_list("1-6"), (std::vector<int>{1, 2, 3, 4, 5, 6}));
  EXPECT_EQ(parse_location_list("1,3,5"), (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(parse_location_list("5-6,1"), (std::vector<int>{5, 6, 1}));
  EXPECT_THROW(parse_location_list("0-3"), ValidationError);
  EXPECT_THROW(parse_location_list("3-1"), ValidationError);
  EXPECT_THROW(parse_location_list("x"), ValidationError);
  EXPECT_THROW(parse_location_list(""), ValidationError);
}

TEST(ListParsing, Rates) {
  EXPECT_EQ(parse_rate_list("0.05,0.1,0.3"), (std::vector<double>{0.05, 0.1, 0.3}));
  EXPECT_THROW(parse_rate_list("0.1,,0.2"), ValidationError);
  EXPECT_THROW(parse_rate_list("fast"), ValidationError);
}

TEST(ListParsing, ClosestMatch) {
  EXPECT_EQ(closest_match("speedcap", {"speed_cap", "zone_radius", "hold"}), "speed_cap");
  EXPECT_EQ(closest_match("qqqqqqqq", {"speed_cap", "hold"}), "");
}

}  // namespace
}  // namespace seev2x::io
