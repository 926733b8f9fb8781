// wpusn: configuration-driven simulator CLI.
//
// Subcommands: simulate, heatmap, sweep, place. On failure a machine-readable
// error record goes to stderr and the exit code identifies the class of
// failure (2 = config/validation, 3 = insufficient power budget,
// 4 = unimplemented scheme, 1 = anything else).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpusn/config.hpp"
#include "wpusn/engine.hpp"
#include "wpusn/io.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir = "out";
  std::int64_t seed = -1;
  int threads = 1;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "scenario config file (JSON)")
      ->check(CLI::ExistingFile);
  cmd->add_option("--set", args.overrides,
                  "override a config value, KEY=VALUE (dotted path or unique key)");
  cmd->add_option("--out", args.out_dir, "output directory");
  cmd->add_option("--seed", args.seed, "override the scenario seed");
  cmd->add_option("--threads", args.threads, "worker threads")->check(CLI::PositiveNumber);
}

wpusn::Scenario resolve_scenario(const CommonArgs& args) {
  std::vector<std::string> overrides = args.overrides;
  if (args.seed >= 0) overrides.push_back("seed=" + std::to_string(args.seed));
  return wpusn::parse_config(args.config_path, overrides);
}

std::filesystem::path prepare_out_dir(const CommonArgs& args) {
  std::filesystem::path dir(args.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void emit_error(const std::string& type, const std::string& message, double deficit_w = 0.0) {
  wpusn::json err;
  err["error"] = {{"type", type}, {"message", message}};
  if (deficit_w != 0.0) err["error"]["deficit_w"] = deficit_w;
  std::cerr << err.dump() << "\n";
}

int run_simulate(const CommonArgs& args) {
  const wpusn::Scenario s = resolve_scenario(args);
  const auto dir = prepare_out_dir(args);
  const wpusn::EnergyReport report = wpusn::run(s, args.threads);

  wpusn::json j = wpusn::report_header(s, "simulate", args.overrides);
  j["results"] = wpusn::energy_report_to_json(report);
  wpusn::write_json_file(dir / "report.json", j);
  wpusn::write_text_file(dir / "per_device.csv",
                         wpusn::csv_preamble(s) + wpusn::per_device_csv(report, s.eh_threshold_w()));
  std::cout << "worst_case_avg_dbm=" << wpusn::io::fmt_double(wpusn::watts_to_dbm(report.worst_case_avg_w))
            << " coverage=" << wpusn::io::fmt_double(report.coverage) << "\n";
  return 0;
}

int run_heatmap(const CommonArgs& args) {
  const wpusn::Scenario s = resolve_scenario(args);
  const auto dir = prepare_out_dir(args);
  const wpusn::HeatmapResult hm = wpusn::heatmap(s, 0, args.threads);

  wpusn::json j = wpusn::report_header(s, "heatmap", args.overrides);
  j["results"] = {{"resolution", hm.resolution},
                  {"coverage", hm.coverage},
                  {"deployment", wpusn::json::array()}};
  for (std::size_t m = 0; m < hm.deployment.positions.size(); ++m)
    j["results"]["deployment"].push_back({{"x_m", hm.deployment.positions[m].x},
                                          {"y_m", hm.deployment.positions[m].y},
                                          {"orientation_rad", hm.deployment.orientations[m]}});
  wpusn::write_json_file(dir / "report.json", j);
  wpusn::write_text_file(dir / "heatmap.csv", wpusn::csv_preamble(s) + wpusn::heatmap_csv(hm));
  wpusn::write_json_file(dir / "heatmap_axes.json", wpusn::heatmap_axes_json(hm, s));
  std::cout << "coverage=" << wpusn::io::fmt_double(hm.coverage) << "\n";
  return 0;
}

int run_sweep(const CommonArgs& args) {
  const wpusn::Scenario s = resolve_scenario(args);
  if (s.sweep.values.empty())
    throw wpusn::validation_error("sweep: config must provide sweep.values");
  const auto dir = prepare_out_dir(args);
  const wpusn::SweepResult result = wpusn::sweep(s, args.threads);

  wpusn::json j = wpusn::report_header(s, "sweep", args.overrides);
  j["results"] = {{"axis", wpusn::to_string(result.axis)},
                  {"cells", wpusn::json::array()}};
  for (const auto& cell : result.cells) {
    wpusn::json c = {{"value", cell.value},
                     {"scheme", wpusn::to_string(cell.scheme)},
                     {"status", cell.status}};
    if (cell.status == "ok") {
      c["worst_case_avg_w"] = cell.worst_case_avg_w;
      c["coverage"] = cell.coverage;
    }
    j["results"]["cells"].push_back(c);
  }
  wpusn::write_json_file(dir / "report.json", j);
  wpusn::write_text_file(dir / "sweep.csv", wpusn::csv_preamble(s) + wpusn::sweep_csv(result));
  std::cout << "cells=" << result.cells.size() << "\n";
  return 0;
}

int run_place(const CommonArgs& args) {
  const wpusn::Scenario s = resolve_scenario(args);
  const auto dir = prepare_out_dir(args);
  const std::vector<wpusn::Vec2> devices =
      wpusn::deploy_devices(s.radius_m, s.device_count, s.seed, 0);
  const wpusn::Deployment d = wpusn::place_pbs(s, devices, 0);

  wpusn::json j = wpusn::report_header(s, "place", args.overrides);
  j["results"] = {{"pbs", wpusn::json::array()}};
  for (std::size_t m = 0; m < d.positions.size(); ++m)
    j["results"]["pbs"].push_back({{"x_m", d.positions[m].x},
                                   {"y_m", d.positions[m].y},
                                   {"orientation_rad", d.orientations[m]}});
  wpusn::write_json_file(dir / "report.json", j);
  wpusn::write_text_file(dir / "placement.csv", wpusn::csv_preamble(s) + wpusn::placement_csv(d));
  std::cout << "pbs=" << d.positions.size() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSI-free wireless energy transfer simulator for underground sensor networks"};
  app.require_subcommand(1);

  CommonArgs args;
  auto* simulate = app.add_subcommand("simulate", "run the Monte Carlo experiment");
  auto* heatmap = app.add_subcommand("heatmap", "evaluate energy on a grid of buried probes");
  auto* sweep = app.add_subcommand("sweep", "sweep a parameter axis across schemes");
  auto* place = app.add_subcommand("place", "compute a PB deployment");
  for (auto* cmd : {simulate, heatmap, sweep, place}) add_common(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return run_simulate(args);
    if (heatmap->parsed()) return run_heatmap(args);
    if (sweep->parsed()) return run_sweep(args);
    if (place->parsed()) return run_place(args);
  } catch (const wpusn::insufficient_budget_error& e) {
    emit_error("insufficient_budget", e.what(), e.deficit_w());
    return 3;
  } catch (const wpusn::not_implemented_error& e) {
    emit_error("not_implemented", e.what());
    return 4;
  } catch (const wpusn::validation_error& e) {
    emit_error("validation", e.what());
    return 2;
  } catch (const std::exception& e) {
    emit_error("internal", e.what());
    return 1;
  }
  return 0;
}
