#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "seev2x/simulation.hpp"

namespace seev2x::sim {

/// Per-seed differences (semantic minus traditional weighted mean speed),
/// everything else in `base` held fixed. Propagates run errors.
std::vector<double> speed_gaps(const ScenarioConfig& base, std::span<const std::uint64_t> seeds);

/// Mean of speed_gaps. Throws ValidationError when `seeds` is empty.
double speed_gap(const ScenarioConfig& base, std::span<const std::uint64_t> seeds);

struct SweepCell {
  int location = 1;
  double spawn_rate = 0.0;
  double speed_gap = 0.0;  // m/s, mean over replicates
  double stddev = 0.0;     // m/s, sample standard deviation over replicates
  std::vector<double> gaps;  // per seed, in seed order
  std::optional<std::string> error;

  std::size_t replicates() const { return gaps.size(); }
  /// Standard error of the mean gap.
  double standard_error() const;
};

struct SweepResult {
  ScenarioKind kind = ScenarioKind::expressway;
  std::size_t replicates = 0;
  std::vector<SweepCell> cells;  // sorted by (location, rate)

  const SweepCell& cell(int location, double spawn_rate) const;
  bool all_succeeded() const;
};

struct SweepAxes {
  std::vector<int> locations;
  std::vector<double> spawn_rates;
  std::vector<std::uint64_t> seeds;
};

/// Runs every (location, rate, seed) combination on up to `parallelism`
/// worker threads. Cells are independent; results are merged in key order so
/// the output does not depend on scheduling. A failing cell records its
/// error and the sweep carries on.
SweepResult sweep(const ScenarioConfig& base, const SweepAxes& axes, unsigned parallelism = 1);

/// seeds = {first, first + 1, ..., first + count - 1}
std::vector<std::uint64_t> consecutive_seeds(std::uint64_t first, std::size_t count);

/// Mean gap over a set of cells and the standard error of that mean,
/// treating cells as independent.
struct PooledGap {
  double mean = 0.0;
  double standard_error = 0.0;
};
PooledGap pool(std::span<const SweepCell* const> cells);

}  // namespace seev2x::sim
