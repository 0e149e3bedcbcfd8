#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "seev2x/csv.hpp"
#include "seev2x/scenario_file.hpp"
#include "seev2x/simulation.hpp"
#include "seev2x/sweep.hpp"

namespace seev2x::cli {

namespace fs = std::filesystem;

namespace {

struct Invocation {
  std::string scenario_path;
  std::string output_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> seeds;
  std::optional<std::string> locations;
  std::optional<std::string> rates;
  unsigned parallel = 1;
  std::string mode;  // empty: as in the scenario file
};

// Writes through a temporary sibling and renames, so readers never observe a
// half-written file.
void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    os.imbue(std::locale::classic());
    body(os);
    if (!os) throw std::runtime_error("failed writing '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

void prepare_output_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw ValidationError("output directory '" + dir.string() + "' is not writable");
  }
}

io::ScenarioDocument load(const Invocation& inv) {
  auto doc = io::parse_scenario_document(inv.scenario_path);
  if (inv.seed) doc.config.seed = *inv.seed;
  return doc;
}

std::vector<policy::ReactionMode> run_modes(const Invocation& inv, const sim::ScenarioConfig& cfg) {
  if (inv.mode.empty()) return {cfg.mode};
  if (inv.mode == "both") return {policy::ReactionMode::traditional, policy::ReactionMode::semantic};
  return {policy::parse_reaction_mode(inv.mode)};
}

int cmd_run(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto doc = load(inv);
  const auto modes = run_modes(inv, doc.config);
  const fs::path root(inv.output_dir);
  prepare_output_dir(root);

  int code = kOk;
  for (auto mode : modes) {
    sim::ScenarioConfig cfg = doc.config;
    cfg.mode = mode;
    const auto record = sim::simulate(cfg);
    const fs::path dir = modes.size() > 1 ? root / std::string(policy::to_string(mode)) : root;
    prepare_output_dir(dir);
    write_file(dir / "ticks.csv", [&](std::ostream& os) { io::write_ticks_csv(os, record); });
    write_file(dir / "summary.csv", [&](std::ostream& os) { io::write_summary_csv(os, record); });
    out << policy::to_string(mode) << ": weighted mean speed "
        << io::format_fixed(record.weighted_mean_speed) << " m/s, caution activations "
        << record.caution_activations << ", completed " << record.completed_trips << '\n';
    if (record.collision) {
      err << "collision fault (" << policy::to_string(mode) << "): " << record.fault << '\n';
      code = kCollision;
    }
  }
  return code;
}

int cmd_sweep(const Invocation& inv, std::ostream& out, std::ostream& err) {
  const auto doc = load(inv);
  if (!inv.mode.empty() && inv.mode != "both") {
    throw ValidationError("sweep compares both modes; --mode must be 'both' if given");
  }
  sim::SweepAxes axes;
  axes.locations = inv.locations ? io::parse_location_list(*inv.locations) : doc.sweep.locations;
  axes.spawn_rates = inv.rates ? io::parse_rate_list(*inv.rates) : doc.sweep.spawn_rates;
  if (axes.spawn_rates.empty()) axes.spawn_rates = {doc.config.spawn_rate};
  axes.seeds = sim::consecutive_seeds(doc.config.seed, inv.seeds.value_or(doc.sweep.seeds));
  if (axes.seeds.empty()) throw ValidationError("--seeds must be at least 1");

  const fs::path root(inv.output_dir);
  prepare_output_dir(root);
  const auto result = sim::sweep(doc.config, axes, inv.parallel);
  write_file(root / "gap_grid.csv", [&](std::ostream& os) { io::write_gap_grid_csv(os, result); });

  std::size_t failed = 0;
  for (const auto& c : result.cells) failed += c.error ? 1 : 0;
  std::error_code ec;
  if (failed) {
    write_file(root / "failures.csv", [&](std::ostream& os) { io::write_failures_csv(os, result); });
    err << failed << " of " << result.cells.size() << " sweep cells failed; see failures.csv\n";
  } else {
    fs::remove(root / "failures.csv", ec);
  }
  out << "wrote " << (result.cells.size() - failed) << " cells x " << axes.seeds.size()
      << " seeds to " << (root / "gap_grid.csv").string() << '\n';
  return failed ? kPartialSweep : kOk;
}

int cmd_validate(const Invocation& inv, std::ostream& out) {
  const auto doc = load(inv);
  const auto& c = doc.config;
  out << "ok: " << to_string(c.kind) << ", mode " << policy::to_string(c.mode) << ", RSU location "
      << c.rsu_location_label << ", spawn rate " << io::format_fixed(c.spawn_rate)
      << " veh/s/lane, duration " << io::format_fixed(c.duration) << " s, hazard "
      << (c.hazard.enabled ? "on" : "off") << '\n';
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Semantic vs traditional V2X hazard warning traffic simulator", "seev2x"};
  app.require_subcommand(1);
  Invocation inv;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", inv.scenario_path, "Scenario file (YAML)")->required();
    sub->add_option("--seed", inv.seed, "Master seed override");
  };

  auto* run = app.add_subcommand("run", "Run one scenario and write ticks.csv and summary.csv");
  add_common(run);
  run->add_option("--out", inv.output_dir, "Output directory")->required();
  run->add_option("--mode", inv.mode, "Reaction mode override")
      ->check(CLI::IsMember({"traditional", "semantic", "both"}));

  auto* sweep = app.add_subcommand("sweep", "RSU location x spawn rate speed-gap sweep");
  add_common(sweep);
  sweep->add_option("--out", inv.output_dir, "Output directory")->required();
  sweep->add_option("--seeds", inv.seeds, "Replicate seeds per cell");
  sweep->add_option("--locations", inv.locations, "RSU locations, e.g. 1-6 or 1,3,5");
  sweep->add_option("--rates", inv.rates, "Comma-separated spawn rates (veh/s/lane)");
  sweep->add_option("--parallel", inv.parallel, "Worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--mode", inv.mode, "Must be 'both' if given")
      ->check(CLI::IsMember({"traditional", "semantic", "both"}));

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario file");
  add_common(validate);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }

  try {
    if (*run) return cmd_run(inv, out, err);
    if (*sweep) return cmd_sweep(inv, out, err);
    return cmd_validate(inv, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace seev2x::cli
