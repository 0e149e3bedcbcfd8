#include "seev2x/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <thread>

#include "seev2x/errors.hpp"

namespace seev2x::sim {

namespace {

double run_gap(const ScenarioConfig& base, std::uint64_t seed,
               const std::shared_ptr<const RoadNetwork>& network) {
  ScenarioConfig semantic = base;
  semantic.seed = seed;
  semantic.mode = policy::ReactionMode::semantic;
  ScenarioConfig traditional = semantic;
  traditional.mode = policy::ReactionMode::traditional;
  const double s = run(semantic, network).weighted_mean_speed;
  const double t = run(traditional, network).weighted_mean_speed;
  return s - t;
}

double mean_of(std::span<const double> xs) {
  double sum = 0.0;
  for (double x : xs) sum += x;
  return xs.empty() ? 0.0 : sum / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean_of(xs);
  double ss = 0.0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

std::vector<double> speed_gaps(const ScenarioConfig& base, std::span<const std::uint64_t> seeds) {
  validate(base);
  const auto network = std::make_shared<const RoadNetwork>(build_network(base.kind, base.geometry));
  std::vector<double> out;
  out.reserve(seeds.size());
  for (auto seed : seeds) out.push_back(run_gap(base, seed, network));
  return out;
}

double speed_gap(const ScenarioConfig& base, std::span<const std::uint64_t> seeds) {
  if (seeds.empty()) throw ValidationError("speed_gap needs at least one seed");
  const auto gaps = speed_gaps(base, seeds);
  return mean_of(gaps);
}

double SweepCell::standard_error() const {
  if (gaps.empty()) return 0.0;
  return stddev / std::sqrt(static_cast<double>(gaps.size()));
}

const SweepCell& SweepResult::cell(int location, double spawn_rate) const {
  for (const auto& c : cells) {
    if (c.location == location && c.spawn_rate == spawn_rate) return c;
  }
  throw ValidationError("sweep has no cell for location " + std::to_string(location) +
                        " and rate " + std::to_string(spawn_rate));
}

bool SweepResult::all_succeeded() const {
  return std::none_of(cells.begin(), cells.end(), [](const SweepCell& c) { return c.error; });
}

std::vector<std::uint64_t> consecutive_seeds(std::uint64_t first, std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = first + i;
  return out;
}

SweepResult sweep(const ScenarioConfig& base, const SweepAxes& axes, unsigned parallelism) {
  if (axes.locations.empty() || axes.spawn_rates.empty() || axes.seeds.empty()) {
    throw ValidationError("sweep axes must be non-empty");
  }
  std::vector<int> locations = axes.locations;
  std::sort(locations.begin(), locations.end());
  locations.erase(std::unique(locations.begin(), locations.end()), locations.end());
  std::vector<double> rates = axes.spawn_rates;
  std::sort(rates.begin(), rates.end());
  rates.erase(std::unique(rates.begin(), rates.end()), rates.end());
  for (int loc : locations) {
    if (loc < 1 || loc > kRsuLocationCount) throw ValidationError("sweep location must be in 1..6");
  }

  validate(base);
  const auto network = std::make_shared<const RoadNetwork>(build_network(base.kind, base.geometry));

  SweepResult result;
  result.kind = base.kind;
  result.replicates = axes.seeds.size();
  for (int loc : locations) {
    for (double rate : rates) {
      SweepCell c;
      c.location = loc;
      c.spawn_rate = rate;
      result.cells.push_back(std::move(c));
    }
  }

  struct Task {
    std::size_t cell = 0;
    std::size_t seed = 0;
    double gap = 0.0;
    std::optional<std::string> error;
  };
  std::vector<Task> tasks;
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    for (std::size_t s = 0; s < axes.seeds.size(); ++s) tasks.push_back({c, s, 0.0, std::nullopt});
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      Task& task = tasks[i];
      ScenarioConfig cfg = base;
      cfg.rsu_location_label = result.cells[task.cell].location;
      cfg.spawn_rate = result.cells[task.cell].spawn_rate;
      try {
        task.gap = run_gap(cfg, axes.seeds[task.seed], network);
      } catch (const std::exception& e) {
        task.error = "seed " + std::to_string(axes.seeds[task.seed]) + ": " + e.what();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(parallelism,
                                                           static_cast<unsigned>(tasks.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Tasks are laid out in (cell, seed) order already.
  for (const Task& task : tasks) {
    SweepCell& c = result.cells[task.cell];
    if (task.error) {
      if (!c.error) c.error = task.error;
      continue;
    }
    c.gaps.push_back(task.gap);
  }
  for (auto& c : result.cells) {
    if (c.error) {
      c.gaps.clear();
      continue;
    }
    c.speed_gap = mean_of(c.gaps);
    c.stddev = sample_stddev(c.gaps);
  }
  return result;
}

PooledGap pool(std::span<const SweepCell* const> cells) {
  if (cells.empty()) return {};
  double mean = 0.0;
  double var = 0.0;
  for (const auto* c : cells) {
    mean += c->speed_gap;
    var += c->standard_error() * c->standard_error();
  }
  const double k = static_cast<double>(cells.size());
  return {mean / k, std::sqrt(var) / k};
}

}  // namespace seev2x::sim
