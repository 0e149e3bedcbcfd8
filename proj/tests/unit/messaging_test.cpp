#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "seev2x/errors.hpp"
#include "seev2x/messaging.hpp"
#include "support/random_scene.hpp"

namespace seev2x::msg {
namespace {

SemanticElement element(ElementClass c, Vec2 p, std::vector<LaneId> lanes = {}, bool occluded = false) {
  SemanticElement e;
  e.cls = c;
  e.position = p;
  e.associated_lanes = std::move(lanes);
  e.occluded = occluded;
  return e;
}

bool has_human(const SemanticMessage& m) {
  return std::any_of(m.elements.begin(), m.elements.end(),
                     [](const auto& e) { return e.cls == ElementClass::human; });
}

TEST(Importance, ScoreExamples) {
  EXPECT_DOUBLE_EQ(importance_score(element(ElementClass::human, {}, {LaneId{"c"}}, true)), 135.0);
  EXPECT_DOUBLE_EQ(importance_score(element(ElementClass::road, {})), 10.0);
}

TEST(Importance, HumanBeatsAnyNonHumanWithEqualModifiers) {
  for (auto c : {ElementClass::obstacle, ElementClass::vehicle_parked, ElementClass::road}) {
    for (bool occ : {false, true}) {
      for (int nl = 0; nl < 6; ++nl) {
        std::vector<LaneId> lanes;
        for (int i = 0; i < nl; ++i) lanes.push_back(LaneId{std::to_string(i)});
        EXPECT_GT(importance_score(element(ElementClass::human, {}, lanes, occ)),
                  importance_score(element(c, {}, lanes, occ)));
      }
    }
  }
}

TEST(Importance, BareHumanBeatsMaximallyDecoratedNonHuman) {
  std::vector<LaneId> many;
  for (int i = 0; i < 10; ++i) many.push_back(LaneId{std::to_string(i)});
  EXPECT_GT(importance_score(element(ElementClass::human, {})),
            importance_score(element(ElementClass::obstacle, {}, many, true)));
}

TEST(Importance, WeightsThatBreakHumanPriorityRejected) {
  ImportanceWeights w;
  w.obstacle = 90;
  EXPECT_THROW(validate(w), ValidationError);
  EXPECT_NO_THROW(validate(ImportanceWeights{}));
}

TEST(LinkQuality, Thresholds) {
  EXPECT_EQ(query_link_quality(30).level, LinkQuality::high);
  EXPECT_EQ(query_link_quality(30).element_budget, 8u);
  EXPECT_EQ(query_link_quality(75).level, LinkQuality::medium);
  EXPECT_EQ(query_link_quality(75).element_budget, 4u);
  EXPECT_EQ(query_link_quality(500).level, LinkQuality::low);
  EXPECT_EQ(query_link_quality(500).element_budget, 2u);
}

SceneDescription five_elements() {
  return {{element(ElementClass::road, {0, 0}, {LaneId{"1"}}),
           element(ElementClass::vehicle_parked, {1, 0}),
           element(ElementClass::human, {2, 0}, {LaneId{"1"}}, true),
           element(ElementClass::obstacle, {3, 0}),
           element(ElementClass::road, {4, 0})}};
}

TEST(Encode, LowBudgetKeepsTopTwo) {
  auto m = encode_semantic(five_elements(), {LinkQuality::low, 2}, 1.0);
  ASSERT_EQ(m.elements.size(), 2u);
  EXPECT_EQ(m.elements[0].cls, ElementClass::human);
  EXPECT_EQ(m.elements[1].cls, ElementClass::obstacle);
  EXPECT_EQ(m.cause, HazardKind::occluded_pedestrian);
  EXPECT_DOUBLE_EQ(m.timestamp, 1.0);
}

TEST(Encode, LargeBudgetKeepsAllSorted) {
  auto m = encode_semantic(five_elements(), {LinkQuality::high, 8}, 0.0);
  ASSERT_EQ(m.elements.size(), 5u);
  for (std::size_t i = 1; i < m.elements.size(); ++i) {
    EXPECT_GE(importance_score(m.elements[i - 1]), importance_score(m.elements[i]));
  }
}

TEST(Encode, TiesBrokenDeterministically) {
  SceneDescription a{{element(ElementClass::road, {5, 0}), element(ElementClass::road, {1, 0})}};
  SceneDescription b{{element(ElementClass::road, {1, 0}), element(ElementClass::road, {5, 0})}};
  auto ma = encode_semantic(a, {LinkQuality::high, 8}, 0);
  auto mb = encode_semantic(b, {LinkQuality::high, 8}, 0);
  EXPECT_EQ(ma, mb);
  EXPECT_DOUBLE_EQ(ma.elements[0].position.x, 1.0);
  EXPECT_EQ(serialize(ma), serialize(mb));
}

TEST(Encode, EmptySceneRejected) {
  EXPECT_THROW(encode_semantic({}, {LinkQuality::high, 8}, 0), ValidationError);
}

TEST(Decode, RoundTripAtSufficientBudget) {
  auto scene = five_elements();
  auto ctx = decode_semantic(encode_semantic(scene, {LinkQuality::high, 8}, 0));
  ASSERT_EQ(ctx.entries.size(), scene.elements.size());
  for (const auto& e : scene.elements) {
    auto it = std::find_if(ctx.entries.begin(), ctx.entries.end(), [&](const auto& c) {
      return c.cls == e.cls && c.position == e.position && c.lanes == e.associated_lanes;
    });
    EXPECT_NE(it, ctx.entries.end());
  }
  EXPECT_EQ(ctx.affected_lanes(), std::vector<LaneId>{LaneId{"1"}});
  EXPECT_EQ(ctx.threat_positions().size(), 2u);
}

TEST(Decode, LowBudgetHumanRoadSceneKeepsHuman) {
  SceneDescription s{{element(ElementClass::road, {0, 0}, {LaneId{"1"}}),
                      element(ElementClass::human, {1, 0}, {LaneId{"1"}})}};
  auto ctx = decode_semantic(encode_semantic(s, {LinkQuality::low, 1}, 0));
  ASSERT_EQ(ctx.entries.size(), 1u);
  EXPECT_EQ(ctx.entries[0].cls, ElementClass::human);
}

TEST(Decode, OutOfOrderRejected) {
  SemanticMessage m;
  m.link = {LinkQuality::high, 8};
  m.elements = {element(ElementClass::road, {}), element(ElementClass::human, {})};
  EXPECT_THROW(decode_semantic(m), ValidationError);
}

TEST(Decode, OverBudgetRejected) {
  auto m = encode_semantic(five_elements(), {LinkQuality::high, 8}, 0);
  m.link = {LinkQuality::low, 2};
  EXPECT_THROW(decode_semantic(m), ValidationError);
}

TEST(Serialization, RoundTripAndCorruption) {
  auto m = encode_semantic(five_elements(), {LinkQuality::medium, 4}, 3.5);
  auto bytes = serialize(m);
  EXPECT_EQ(deserialize(bytes), m);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(deserialize(truncated), ValidationError);
  auto bad = bytes;
  bad[0] = 'X';
  EXPECT_THROW(deserialize(bad), ValidationError);
  auto trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(deserialize(trailing), ValidationError);
}

TEST(MessagingProperty, HumanSurvivesAndTruncationIsMonotone) {
  std::mt19937_64 gen(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    auto scene = testing::random_scene(gen, true);
    std::vector<SemanticMessage> by_budget;
    for (std::size_t k = 1; k <= 9; ++k) {
      by_budget.push_back(encode_semantic(scene, {LinkQuality::low, k}, 0));
      ASSERT_TRUE(has_human(by_budget.back())) << "trial " << trial << " budget " << k;
    }
    for (std::size_t k = 1; k < by_budget.size(); ++k) {
      const auto& small = by_budget[k - 1].elements;
      const auto& big = by_budget[k].elements;
      ASSERT_LE(small.size(), big.size());
      ASSERT_TRUE(std::equal(small.begin(), small.end(), big.begin()));
    }
  }
}

TEST(MessagingProperty, EncodingIsDeterministic) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto scene = testing::random_scene(gen, false);
    auto shuffled = scene;
    std::shuffle(shuffled.elements.begin(), shuffled.elements.end(), gen);
    auto a = serialize(encode_semantic(scene, {LinkQuality::medium, 4}, 1.0));
    auto b = serialize(encode_semantic(shuffled, {LinkQuality::medium, 4}, 1.0));
    ASSERT_EQ(a, b);
  }
}

TEST(Scene, SceneForDefaultHazard) {
  auto net = build_network(ScenarioKind::expressway);
  auto h = default_hazard(net, 1, {}, 0, 100);
  auto rsu = make_rsu(net, 1);
  auto scene = scene_for_hazard(h, rsu, net);
  auto human = std::find_if(scene.elements.begin(), scene.elements.end(),
                            [](const auto& e) { return e.cls == ElementClass::human; });
  ASSERT_NE(human, scene.elements.end());
  EXPECT_TRUE(human->occluded);
  EXPECT_EQ(human->associated_lanes, std::vector<LaneId>{LaneId{"1"}});
  for (const auto& e : scene.elements) EXPECT_LE(distance(e.position, rsu.position), rsu.camera_range);
}

}  // namespace
}  // namespace seev2x::msg
