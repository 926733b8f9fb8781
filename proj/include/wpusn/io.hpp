// Result serialization: JSON summaries with stable key order and RFC-4180
// CSV. Every artifact embeds the seed and a hash of the resolved scenario so
// outputs are traceable and reruns comparable byte for byte.
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpusn/common.hpp"
#include "wpusn/engine.hpp"
#include "wpusn/scenario.hpp"

namespace wpusn {

namespace io {

inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline std::string csv_row(const std::vector<std::string>& fields) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) row += ",";
    row += csv_escape(fields[i]);
  }
  row += "\r\n";
  return row;
}

inline std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace io

using json = nlohmann::ordered_json;

// Canonical scenario echo; the config hash is the FNV-1a of its dump.
inline json scenario_to_json(const Scenario& s) {
  json j;
  j["area"] = {{"radius_m", s.radius_m},
               {"devices", s.device_count},
               {"burial_depth_m", s.burial_depth_m}};
  json soil = {{"provider", to_string(s.provider)},
               {"vwc", s.soil.vwc},
               {"clay", s.soil.clay},
               {"mu_r", s.soil.mu_r}};
  const SoilProperties resolved = s.resolved_soil();
  soil["eps_real"] = resolved.eps_real;
  soil["eps_imag"] = resolved.eps_imag;
  j["soil"] = soil;
  j["rf"] = {{"frequency_hz", s.rf.frequency_hz},
             {"path_loss_exponent", s.rf.path_loss_exponent},
             {"pb_height_m", s.rf.pb_height_m}};
  j["fading"] = {{"rician_k", s.rician_k},
                 {"nlos_exp_corr", s.nlos_exp_corr},
                 {"rab_redraw_per_step", s.rab_redraw_per_step}};
  j["pbs"] = {{"count", s.pb_count},
              {"antennas", s.antennas_per_pb},
              {"scheme", to_string(s.scheme)},
              {"orientation", to_string(s.orientation_policy)},
              {"orientation_rad", s.fixed_orientation}};
  json placement = {{"method", to_string(s.placement.method)}};
  if (s.placement.method == PlacementMethod::fixed) {
    json pos = json::array();
    for (const auto& p : s.fixed_positions()) pos.push_back({p.x, p.y});
    placement["positions"] = pos;
  }
  if (s.placement.method == PlacementMethod::effc) placement["effc_step_m"] = s.effc_step();
  if (s.placement.method == PlacementMethod::kmeans)
    placement["kmeans_restarts"] = s.placement.kmeans_restarts;
  j["placement"] = placement;
  j["power"] = {{"model", to_string(s.power_model)},
                {"budget_w", s.budget.budget_w},
                {"amp_efficiency", s.budget.amp_efficiency},
                {"circuit_w", s.budget.circuit_w},
                {"rf_chain_w", s.budget.rf_chain_w},
                {"motor",
                 {{"pulse_min_s", s.motor.pulse_min_s},
                  {"pulse_max_s", s.motor.pulse_max_s},
                  {"duty_cycle_s", s.motor.duty_cycle_s},
                  {"supply_v", s.motor.supply_v},
                  {"working_current_a", s.motor.working_current_a},
                  {"block_s", s.motor.block_s}}}};
  j["eh_threshold_dbm"] = s.eh_threshold_dbm;
  j["trials"] = {{"deployments", s.trials.deployments}, {"fading_draws", s.trials.fading_draws}};
  j["aggregation"] = to_string(s.aggregation);
  j["seed"] = s.seed;
  j["heatmap"] = {{"resolution", s.heatmap.resolution}, {"fading_draws", s.heatmap.fading_draws}};
  if (!s.sweep.values.empty()) {
    json sw = {{"axis", to_string(s.sweep.axis)}, {"values", s.sweep.values}};
    json names = json::array();
    for (SchemeKind k : s.sweep.schemes) names.push_back(to_string(k));
    sw["schemes"] = names;
    j["sweep"] = sw;
  }
  return j;
}

inline std::string config_hash(const Scenario& s) {
  return io::hex64(io::fnv1a64(scenario_to_json(s).dump()));
}

// Metadata record prepended to every CSV artifact.
inline std::string csv_preamble(const Scenario& s) {
  return "# seed=" + std::to_string(s.seed) + " config_hash=" + config_hash(s) + "\r\n";
}

inline json report_header(const Scenario& s, const std::string& command,
                          const std::vector<std::string>& overrides) {
  json j;
  j["command"] = command;
  j["seed"] = s.seed;
  j["config_hash"] = config_hash(s);
  if (!overrides.empty()) j["overrides"] = overrides;
  j["scenario"] = scenario_to_json(s);
  return j;
}

inline json energy_report_to_json(const EnergyReport& r) {
  json j;
  j["worst_case_avg_w"] = r.worst_case_avg_w;
  j["worst_case_avg_dbm"] = watts_to_dbm(r.worst_case_avg_w);
  j["mean_avg_w"] = r.mean_avg_w;
  j["mean_avg_dbm"] = watts_to_dbm(r.mean_avg_w);
  j["coverage"] = r.coverage;
  json reps = json::array();
  for (const auto& rep : r.replicates)
    reps.push_back({{"min_w", rep.min_w}, {"mean_w", rep.mean_w}, {"coverage", rep.coverage}});
  j["replicates"] = reps;
  return j;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write '" + path.string() + "'");
  out << content;
}

inline void write_json_file(const std::filesystem::path& path, const json& j) {
  write_text_file(path, j.dump(2) + "\n");
}

inline std::string per_device_csv(const EnergyReport& r, double threshold_w) {
  std::string csv = io::csv_row({"replicate", "device", "x_m", "y_m", "incident_w",
                                 "incident_dbm", "covered"});
  for (std::size_t rep = 0; rep < r.replicates.size(); ++rep) {
    const auto& devices = r.replicates[rep].devices;
    for (std::size_t i = 0; i < devices.size(); ++i) {
      const auto& d = devices[i];
      csv += io::csv_row({std::to_string(rep), std::to_string(i), io::fmt_double(d.position.x),
                          io::fmt_double(d.position.y), io::fmt_double(d.incident_w),
                          io::fmt_double(watts_to_dbm(d.incident_w)),
                          d.incident_w >= threshold_w ? "1" : "0"});
    }
  }
  return csv;
}

inline std::string heatmap_csv(const HeatmapResult& hm) {
  std::string csv;
  for (int iy = 0; iy < hm.resolution; ++iy) {
    std::vector<std::string> row;
    row.reserve(static_cast<std::size_t>(hm.resolution));
    for (int ix = 0; ix < hm.resolution; ++ix)
      row.push_back(io::fmt_double(
          hm.dbm[static_cast<std::size_t>(iy) * static_cast<std::size_t>(hm.resolution) +
                 static_cast<std::size_t>(ix)]));
    csv += io::csv_row(row);
  }
  return csv;
}

inline json heatmap_axes_json(const HeatmapResult& hm, const Scenario& s) {
  json j;
  j["resolution"] = hm.resolution;
  j["radius_m"] = s.radius_m;
  j["x_m"] = hm.xs;
  j["y_m"] = hm.ys;
  j["unit"] = "dBm";
  return j;
}

inline std::string sweep_csv(const SweepResult& r) {
  std::string csv =
      io::csv_row({"axis", "value", "scheme", "status", "worst_case_avg_w", "worst_case_avg_dbm",
                   "coverage"});
  for (const auto& cell : r.cells) {
    const bool ok = cell.status == "ok";
    csv += io::csv_row({to_string(r.axis), io::fmt_double(cell.value), to_string(cell.scheme),
                        cell.status, ok ? io::fmt_double(cell.worst_case_avg_w) : "",
                        ok ? io::fmt_double(watts_to_dbm(cell.worst_case_avg_w)) : "",
                        ok ? io::fmt_double(cell.coverage) : ""});
  }
  return csv;
}

inline std::string placement_csv(const Deployment& d) {
  std::string csv = io::csv_row({"pb", "x_m", "y_m", "orientation_rad"});
  for (std::size_t m = 0; m < d.positions.size(); ++m)
    csv += io::csv_row({std::to_string(m), io::fmt_double(d.positions[m].x),
                        io::fmt_double(d.positions[m].y), io::fmt_double(d.orientations[m])});
  return csv;
}

}  // namespace wpusn
