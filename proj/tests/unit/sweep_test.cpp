#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "seev2x/csv.hpp"
#include "seev2x/errors.hpp"
#include "seev2x/sweep.hpp"

namespace seev2x::sim {
namespace {

ScenarioConfig quick(ScenarioKind kind) {
  auto cfg = ScenarioConfig::defaults(kind);
  cfg.duration = 90;
  cfg.warmup = 20;
  cfg.hazard.enabled = true;
  return cfg;
}

TEST(SpeedGap, NoHazardIsExactlyZero) {
  auto cfg = quick(ScenarioKind::intersection);
  cfg.hazard.enabled = false;
  auto seeds = consecutive_seeds(1, 3);
  EXPECT_EQ(speed_gap(cfg, seeds), 0.0);
}

TEST(SpeedGap, EmptySeedsRejected) {
  EXPECT_THROW(speed_gap(quick(ScenarioKind::expressway), {}), ValidationError);
}

TEST(SpeedGap, PositiveNearExpresswayEntry) {
  auto cfg = quick(ScenarioKind::expressway);
  cfg.rsu_location_label = 1;
  cfg.spawn_rate = 0.05;
  auto seeds = consecutive_seeds(1, 4);
  EXPECT_GT(speed_gap(cfg, seeds), 0.0);
}

TEST(SpeedGap, BitReproducible) {
  auto cfg = quick(ScenarioKind::expressway);
  auto seeds = consecutive_seeds(10, 2);
  EXPECT_EQ(speed_gaps(cfg, seeds), speed_gaps(cfg, seeds));
}

TEST(Sweep, CellCountAndOrder) {
  auto cfg = quick(ScenarioKind::expressway);
  cfg.duration = 40;
  SweepAxes axes{{1, 2, 3, 4, 5, 6}, {0.3, 0.05, 0.1}, consecutive_seeds(1, 5)};
  auto r = sweep(cfg, axes, 2);
  ASSERT_EQ(r.cells.size(), 18u);
  EXPECT_EQ(r.replicates, 5u);
  std::size_t runs = 0;
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    runs += r.cells[i].replicates();
    if (i) {
      const auto& a = r.cells[i - 1];
      const auto& b = r.cells[i];
      EXPECT_TRUE(a.location < b.location || (a.location == b.location && a.spawn_rate < b.spawn_rate));
    }
  }
  EXPECT_EQ(runs, 90u);  // 180 simulations: one per mode
  EXPECT_TRUE(r.all_succeeded());
  EXPECT_DOUBLE_EQ(r.cell(4, 0.1).spawn_rate, 0.1);
}

TEST(Sweep, SerialAndParallelIdentical) {
  auto cfg = quick(ScenarioKind::intersection);
  cfg.duration = 50;
  SweepAxes axes{{1, 3, 5}, {0.05, 0.2}, consecutive_seeds(7, 3)};
  auto a = sweep(cfg, axes, 1);
  auto b = sweep(cfg, axes, 4);
  std::ostringstream oa, ob;
  io::write_gap_grid_csv(oa, a);
  io::write_gap_grid_csv(ob, b);
  EXPECT_EQ(oa.str(), ob.str());
  for (std::size_t i = 0; i < a.cells.size(); ++i) EXPECT_EQ(a.cells[i].gaps, b.cells[i].gaps);
}

TEST(Sweep, CellStatistics) {
  SweepCell c;
  c.gaps = {1.0, 2.0, 3.0, 6.0};
  c.speed_gap = 3.0;
  c.stddev = std::sqrt(14.0 / 3.0);
  EXPECT_NEAR(c.standard_error(), std::sqrt(14.0 / 3.0) / 2.0, 1e-12);

  SweepCell d = c;
  d.speed_gap = 1.0;
  const SweepCell* cells[] = {&c, &d};
  auto p = pool(cells);
  EXPECT_DOUBLE_EQ(p.mean, 2.0);
  EXPECT_NEAR(p.standard_error, std::sqrt(2.0) * c.standard_error() / 2.0, 1e-12);
}

TEST(Sweep, FailingCellIsRecordedAndOthersContinue) {
  auto cfg = quick(ScenarioKind::expressway);
  cfg.duration = 30;
  SweepAxes axes{{1, 2}, {0.1, -1.0}, consecutive_seeds(1, 2)};
  auto r = sweep(cfg, axes, 1);
  EXPECT_FALSE(r.all_succeeded());
  EXPECT_TRUE(r.cell(1, -1.0).error.has_value());
  EXPECT_FALSE(r.cell(1, 0.1).error.has_value());
}

}  // namespace
}  // namespace seev2x::sim
