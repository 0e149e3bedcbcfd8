#include <benchmark/benchmark.h>

#include <random>

#include "seev2x/channel.hpp"
#include "seev2x/idm.hpp"
#include "seev2x/messaging.hpp"
#include "seev2x/simulation.hpp"

namespace {

using namespace seev2x;

void BM_IdmAcceleration(benchmark::State& state) {
  const idm::IdmParams p;
  double v = 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(idm::idm_acceleration(v, 25.0, 1.0, p));
    v = v < 20.0 ? v + 1e-6 : 10.0;
  }
}
BENCHMARK(BM_IdmAcceleration);

void BM_TryDeliver(benchmark::State& state) {
  radio::BroadcastEvent e;
  e.payload = msg::TraditionalAlert{};
  RandomStream rng(1);
  const radio::ChannelModel c;
  for (auto _ : state) benchmark::DoNotOptimize(radio::try_deliver(e, {80.0, 3.0}, c, rng));
}
BENCHMARK(BM_TryDeliver);

void BM_EncodeSemantic(benchmark::State& state) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> coord(-50, 50);
  msg::SceneDescription scene;
  for (int i = 0; i < state.range(0); ++i) {
    msg::SemanticElement e;
    e.cls = static_cast<msg::ElementClass>(i % 4);
    e.position = {coord(gen), coord(gen)};
    e.associated_lanes = {LaneId{"1"}};
    scene.elements.push_back(e);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(msg::encode_semantic(scene, {msg::LinkQuality::medium, 4}, 0.0));
  }
}
BENCHMARK(BM_EncodeSemantic)->Arg(4)->Arg(16)->Arg(64);

void BM_Run(benchmark::State& state, ScenarioKind kind) {
  auto cfg = sim::ScenarioConfig::defaults(kind);
  cfg.hazard.enabled = true;
  cfg.mode = policy::ReactionMode::traditional;
  for (auto _ : state) benchmark::DoNotOptimize(sim::simulate(cfg).weighted_mean_speed);
}
BENCHMARK_CAPTURE(BM_Run, expressway, ScenarioKind::expressway)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Run, intersection, ScenarioKind::intersection)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
