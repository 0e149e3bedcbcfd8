#include "seev2x/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace seev2x::io {

std::string format_fixed(double value) {
  if (!std::isfinite(value)) throw std::domain_error("refusing to write a non-finite value");
  if (value == 0.0) value = 0.0;  // no "-0.000000"
  std::array<char, 64> buf{};
  const auto [end, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, 6);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  std::string out(buf.data(), end);
  if (out == "-0.000000") out = "0.000000";
  return out;
}

void write_ticks_csv(std::ostream& os, const sim::MetricsRecord& record) {
  os << "time_s,mean_speed_mps,cautioned,active\n";
  for (const auto& t : record.ticks) {
    os << format_fixed(t.time) << ',' << format_fixed(t.mean_speed) << ',' << t.cautioned << ','
       << t.active << '\n';
  }
}

void write_summary_csv(std::ostream& os, const sim::MetricsRecord& record) {
  os << "weighted_mean_speed_mps,caution_activations,completed,collision\n";
  os << format_fixed(record.weighted_mean_speed) << ',' << record.caution_activations << ','
     << record.completed_trips << ',' << (record.collision ? 1 : 0) << '\n';
}

void write_gap_grid_csv(std::ostream& os, const sim::SweepResult& result) {
  os << "scenario_kind,rsu_location,spawn_rate,speed_gap_mps,stddev_mps,replicates\n";
  for (const auto& c : result.cells) {
    if (c.error) continue;
    os << to_string(result.kind) << ',' << c.location << ',' << format_fixed(c.spawn_rate) << ','
       << format_fixed(c.speed_gap) << ',' << format_fixed(c.stddev) << ',' << c.replicates()
       << '\n';
  }
}

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + '"';
}

}  // namespace

void write_failures_csv(std::ostream& os, const sim::SweepResult& result) {
  os << "scenario_kind,rsu_location,spawn_rate,error\n";
  for (const auto& c : result.cells) {
    if (!c.error) continue;
    os << to_string(result.kind) << ',' << c.location << ',' << format_fixed(c.spawn_rate) << ','
       << quoted(*c.error) << '\n';
  }
}

}  // namespace seev2x::io
