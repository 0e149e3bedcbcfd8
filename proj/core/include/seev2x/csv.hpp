#pragma once

#include <ostream>
#include <string>

#include "seev2x/simulation.hpp"
#include "seev2x/sweep.hpp"

namespace seev2x::io {

/// Fixed-point, 6 decimals, '.' separator regardless of locale. Non-finite
/// values are rejected.
std::string format_fixed(double value);

void write_ticks_csv(std::ostream& os, const sim::MetricsRecord& record);
void write_summary_csv(std::ostream& os, const sim::MetricsRecord& record);
void write_gap_grid_csv(std::ostream& os, const sim::SweepResult& result);
void write_failures_csv(std::ostream& os, const sim::SweepResult& result);

}  // namespace seev2x::io
