#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "seev2x/errors.hpp"
#include "seev2x/simulation.hpp"

namespace seev2x::io {

/// Malformed or invalid scenario document. `line` is 1-based, 0 when the
/// problem is not tied to a location in the file.
class ScenarioError : public ValidationError {
 public:
  ScenarioError(const std::string& message, int line)
      : ValidationError(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

struct SweepSpec {
  std::vector<int> locations{1, 2, 3, 4, 5, 6};
  std::vector<double> spawn_rates;  // empty: use the scenario's spawn_rate
  std::size_t seeds = 5;
};

struct ScenarioDocument {
  sim::ScenarioConfig config;
  SweepSpec sweep;
};

/// Parses a YAML scenario document; every key not given takes its default.
/// Unknown keys are rejected with the closest known key as a suggestion.
ScenarioDocument parse_scenario_text(std::string_view text);
ScenarioDocument parse_scenario_document(const std::filesystem::path& path);
sim::ScenarioConfig parse_scenario(const std::filesystem::path& path);

/// Accepts "1-6", "2", "1,3,5" or combinations such as "1-2,5-6".
std::vector<int> parse_location_list(std::string_view text);
/// Comma-separated decimal numbers.
std::vector<double> parse_rate_list(std::string_view text);

/// Closest candidate by edit distance, empty if none is plausibly meant.
std::string closest_match(std::string_view key, const std::vector<std::string>& candidates);

}  // namespace seev2x::io
