// Scenario configuration: a nested JSON file whose field names mirror the
// simulation-parameter table documented in the README. Omitted fields take
// the documented defaults; unknown keys are hard errors so typos never pass
// silently. Power-like quantities accept either a plain number in the
// field's canonical unit or a string with an explicit "W" / "mW" / "dBm"
// suffix.
#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpusn/common.hpp"
#include "wpusn/scenario.hpp"

namespace wpusn {

using json = nlohmann::ordered_json;

namespace detail {

inline void reject_unknown_keys(const json& obj, const std::string& section,
                                const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw validation_error("config: section '" + section + "' must be an object");
  for (const auto& item : obj.items())
    if (!allowed.count(item.key()))
      throw validation_error("config: unknown key '" +
                             (section.empty() ? item.key() : section + "." + item.key()) + "'");
}

// "-22 dBm", "10 W", "6.3 mW" or a bare number in the canonical unit.
inline double parse_power(const json& v, const std::string& field, bool canonical_dbm) {
  if (v.is_number()) return v.get<double>();
  if (!v.is_string())
    throw validation_error("config: " + field + " must be a number or a unit string");
  const std::string text = v.get<std::string>();
  std::istringstream in(text);
  double value = 0.0;
  std::string unit;
  if (!(in >> value))
    throw validation_error("config: cannot parse quantity '" + text + "' for " + field);
  in >> unit;
  std::string rest;
  if (in >> rest)
    throw validation_error("config: trailing content in quantity '" + text + "' for " + field);
  for (auto& ch : unit) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  double watts = 0.0;
  if (unit == "w") watts = value;
  else if (unit == "mw") watts = value * 1e-3;
  else if (unit == "uw") watts = value * 1e-6;
  else if (unit == "dbm") watts = dbm_to_watts(value);
  else if (unit.empty()) return value;  // canonical unit
  else throw validation_error("config: unknown unit '" + unit + "' in " + field);
  return canonical_dbm ? watts_to_dbm(watts) : watts;
}

inline double get_number(const json& obj, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number())
    throw validation_error(std::string("config: ") + key + " must be a number");
  return obj[key].get<double>();
}

inline int get_int(const json& obj, const char* key, int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer())
    throw validation_error(std::string("config: ") + key + " must be an integer");
  return obj[key].get<int>();
}

inline bool get_bool(const json& obj, const char* key, bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean())
    throw validation_error(std::string("config: ") + key + " must be a boolean");
  return obj[key].get<bool>();
}

inline std::string get_string(const json& obj, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_string())
    throw validation_error(std::string("config: ") + key + " must be a string");
  return obj[key].get<std::string>();
}

}  // namespace detail

// Builds a Scenario from parsed JSON (already merged with any overrides).
inline Scenario scenario_from_json(const json& root) {
  using detail::get_bool;
  using detail::get_int;
  using detail::get_number;
  using detail::get_string;
  using detail::reject_unknown_keys;

  reject_unknown_keys(root, "",
                      {"area", "soil", "rf", "fading", "pbs", "placement", "power",
                       "eh_threshold", "trials", "aggregation", "seed", "heatmap", "sweep"});
  Scenario s;

  if (root.contains("area")) {
    const json& a = root["area"];
    reject_unknown_keys(a, "area", {"radius_m", "devices", "burial_depth_m"});
    s.radius_m = get_number(a, "radius_m", s.radius_m);
    s.device_count = get_int(a, "devices", s.device_count);
    s.burial_depth_m = get_number(a, "burial_depth_m", s.burial_depth_m);
  }

  if (root.contains("soil")) {
    const json& o = root["soil"];
    reject_unknown_keys(o, "soil", {"provider", "vwc", "clay", "mu_r", "eps_real", "eps_imag"});
    const std::string provider = get_string(o, "provider", "mineralogy");
    if (provider == "mineralogy") s.provider = DielectricProvider::mineralogy;
    else if (provider == "direct") s.provider = DielectricProvider::direct;
    else throw validation_error("config: soil.provider must be 'mineralogy' or 'direct'");
    s.soil.vwc = get_number(o, "vwc", s.soil.vwc);
    s.soil.clay = get_number(o, "clay", s.soil.clay);
    s.soil.mu_r = get_number(o, "mu_r", s.soil.mu_r);
    s.soil.eps_real = get_number(o, "eps_real", s.soil.eps_real);
    s.soil.eps_imag = get_number(o, "eps_imag", s.soil.eps_imag);
    if (s.provider == DielectricProvider::direct &&
        !(o.contains("eps_real") && o.contains("eps_imag")))
      throw validation_error("config: soil.provider 'direct' needs eps_real and eps_imag");
  }

  if (root.contains("rf")) {
    const json& o = root["rf"];
    reject_unknown_keys(o, "rf", {"frequency_hz", "path_loss_exponent", "pb_height_m"});
    s.rf.frequency_hz = get_number(o, "frequency_hz", s.rf.frequency_hz);
    s.rf.path_loss_exponent = get_number(o, "path_loss_exponent", s.rf.path_loss_exponent);
    s.rf.pb_height_m = get_number(o, "pb_height_m", s.rf.pb_height_m);
  }

  if (root.contains("fading")) {
    const json& o = root["fading"];
    reject_unknown_keys(o, "fading", {"rician_k", "nlos_exp_corr", "rab_redraw_per_step"});
    s.rician_k = get_number(o, "rician_k", s.rician_k);
    s.nlos_exp_corr = get_number(o, "nlos_exp_corr", s.nlos_exp_corr);
    s.rab_redraw_per_step = get_bool(o, "rab_redraw_per_step", s.rab_redraw_per_step);
  }

  if (root.contains("pbs")) {
    const json& o = root["pbs"];
    reject_unknown_keys(o, "pbs", {"count", "antennas", "scheme", "orientation", "orientation_rad"});
    s.pb_count = get_int(o, "count", s.pb_count);
    s.antennas_per_pb = get_int(o, "antennas", s.antennas_per_pb);
    s.scheme = parse_scheme(get_string(o, "scheme", to_string(s.scheme)));
    const std::string orient = get_string(o, "orientation", "random");
    if (orient == "random") s.orientation_policy = OrientationPolicy::random;
    else if (orient == "fixed") s.orientation_policy = OrientationPolicy::fixed;
    else if (orient == "radial") s.orientation_policy = OrientationPolicy::radial;
    else throw validation_error("config: pbs.orientation must be random, fixed or radial");
    s.fixed_orientation = get_number(o, "orientation_rad", 0.0);
  }

  if (root.contains("placement")) {
    const json& o = root["placement"];
    reject_unknown_keys(o, "placement", {"method", "positions", "effc_step_m", "kmeans_restarts"});
    const std::string method = get_string(o, "method", "fixed");
    if (method == "fixed") s.placement.method = PlacementMethod::fixed;
    else if (method == "kmeans") s.placement.method = PlacementMethod::kmeans;
    else if (method == "effc") s.placement.method = PlacementMethod::effc;
    else throw validation_error("config: placement.method must be fixed, kmeans or effc");
    if (o.contains("positions")) {
      if (!o["positions"].is_array())
        throw validation_error("config: placement.positions must be an array of [x, y]");
      for (const auto& p : o["positions"]) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
          throw validation_error("config: placement.positions entries must be [x, y] numbers");
        s.placement.positions.push_back({p[0].get<double>(), p[1].get<double>()});
      }
    }
    s.placement.effc_step_m = get_number(o, "effc_step_m", s.placement.effc_step_m);
    s.placement.kmeans_restarts = get_int(o, "kmeans_restarts", s.placement.kmeans_restarts);
  }

  if (root.contains("power")) {
    const json& o = root["power"];
    reject_unknown_keys(o, "power",
                        {"model", "budget", "amp_efficiency", "circuit_w", "rf_chain_w", "motor"});
    const std::string model = get_string(o, "model", "ideal");
    if (model == "ideal") s.power_model = PowerModel::ideal;
    else if (model == "practical") s.power_model = PowerModel::practical;
    else throw validation_error("config: power.model must be 'ideal' or 'practical'");
    if (o.contains("budget")) s.budget.budget_w = detail::parse_power(o["budget"], "power.budget", false);
    s.budget.amp_efficiency = get_number(o, "amp_efficiency", s.budget.amp_efficiency);
    s.budget.circuit_w = get_number(o, "circuit_w", s.budget.circuit_w);
    s.budget.rf_chain_w = get_number(o, "rf_chain_w", s.budget.rf_chain_w);
    if (o.contains("motor")) {
      const json& m = o["motor"];
      reject_unknown_keys(m, "power.motor",
                          {"pulse_min_s", "pulse_max_s", "duty_cycle_s", "supply_v",
                           "working_current_a", "block_s"});
      s.motor.pulse_min_s = get_number(m, "pulse_min_s", s.motor.pulse_min_s);
      s.motor.pulse_max_s = get_number(m, "pulse_max_s", s.motor.pulse_max_s);
      s.motor.duty_cycle_s = get_number(m, "duty_cycle_s", s.motor.duty_cycle_s);
      s.motor.supply_v = get_number(m, "supply_v", s.motor.supply_v);
      s.motor.working_current_a = get_number(m, "working_current_a", s.motor.working_current_a);
      s.motor.block_s = get_number(m, "block_s", s.motor.block_s);
    }
  }

  if (root.contains("eh_threshold"))
    s.eh_threshold_dbm = detail::parse_power(root["eh_threshold"], "eh_threshold", true);

  if (root.contains("trials")) {
    const json& o = root["trials"];
    reject_unknown_keys(o, "trials", {"deployments", "fading_draws"});
    s.trials.deployments = get_int(o, "deployments", s.trials.deployments);
    s.trials.fading_draws = get_int(o, "fading_draws", s.trials.fading_draws);
  }

  if (root.contains("aggregation")) {
    const std::string agg = root["aggregation"].is_string() ? root["aggregation"].get<std::string>() : "";
    if (agg == "mean") s.aggregation = Aggregation::mean;
    else if (agg == "median") s.aggregation = Aggregation::median;
    else throw validation_error("config: aggregation must be 'mean' or 'median'");
  }

  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer())
      throw validation_error("config: seed must be an integer");
    s.seed = root["seed"].get<std::uint64_t>();
  }

  if (root.contains("heatmap")) {
    const json& o = root["heatmap"];
    reject_unknown_keys(o, "heatmap", {"resolution", "fading_draws"});
    s.heatmap.resolution = get_int(o, "resolution", s.heatmap.resolution);
    s.heatmap.fading_draws = get_int(o, "fading_draws", s.heatmap.fading_draws);
  }

  if (root.contains("sweep")) {
    const json& o = root["sweep"];
    reject_unknown_keys(o, "sweep", {"axis", "values", "schemes"});
    const std::string axis = get_string(o, "axis", "total_antennas");
    if (axis == "total_antennas") s.sweep.axis = SweepAxis::total_antennas;
    else if (axis == "vwc") s.sweep.axis = SweepAxis::vwc;
    else if (axis == "depth") s.sweep.axis = SweepAxis::depth;
    else if (axis == "rician_k") s.sweep.axis = SweepAxis::rician_k;
    else if (axis == "eh_threshold") s.sweep.axis = SweepAxis::eh_threshold;
    else throw validation_error("config: unknown sweep.axis '" + axis + "'");
    if (o.contains("values")) {
      if (!o["values"].is_array()) throw validation_error("config: sweep.values must be an array");
      for (const auto& v : o["values"]) {
        if (!v.is_number()) throw validation_error("config: sweep.values must be numbers");
        s.sweep.values.push_back(v.get<double>());
      }
    }
    if (o.contains("schemes")) {
      if (!o["schemes"].is_array())
        throw validation_error("config: sweep.schemes must be an array of names");
      for (const auto& v : o["schemes"]) {
        if (!v.is_string()) throw validation_error("config: sweep.schemes must be names");
        s.sweep.schemes.push_back(parse_scheme(v.get<std::string>()));
      }
    }
  }

  return s;
}

// Known dotted paths, used to resolve bare --set keys by unique suffix.
inline const std::vector<std::string>& config_paths() {
  static const std::vector<std::string> paths = {
      "area.radius_m", "area.devices", "area.burial_depth_m",
      "soil.provider", "soil.vwc", "soil.clay", "soil.mu_r", "soil.eps_real", "soil.eps_imag",
      "rf.frequency_hz", "rf.path_loss_exponent", "rf.pb_height_m",
      "fading.rician_k", "fading.nlos_exp_corr", "fading.rab_redraw_per_step",
      "pbs.count", "pbs.antennas", "pbs.scheme", "pbs.orientation", "pbs.orientation_rad",
      "placement.method", "placement.positions", "placement.effc_step_m",
      "placement.kmeans_restarts",
      "power.model", "power.budget", "power.amp_efficiency", "power.circuit_w",
      "power.rf_chain_w",
      "power.motor.pulse_min_s", "power.motor.pulse_max_s", "power.motor.duty_cycle_s",
      "power.motor.supply_v", "power.motor.working_current_a", "power.motor.block_s",
      "eh_threshold", "trials.deployments", "trials.fading_draws", "aggregation", "seed",
      "heatmap.resolution", "heatmap.fading_draws",
      "sweep.axis", "sweep.values", "sweep.schemes"};
  return paths;
}

// Applies one KEY=VALUE override onto the JSON tree. KEY may be a full
// dotted path or a unique trailing fragment of one (e.g. "vwc").
inline void apply_override(json& root, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw validation_error("override '" + assignment + "' is not KEY=VALUE");
  std::string key = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  if (key.find('.') == std::string::npos) {
    std::string match;
    for (const auto& path : config_paths()) {
      const bool hit = path == key || (path.size() > key.size() &&
                                       path.compare(path.size() - key.size(), key.size(), key) == 0 &&
                                       path[path.size() - key.size() - 1] == '.');
      if (hit) {
        if (!match.empty())
          throw validation_error("override key '" + key + "' is ambiguous ('" + match + "' vs '" +
                                 path + "')");
        match = path;
      }
    }
    if (!match.empty()) key = match;
  }

  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // bare strings need no quotes

  json* node = &root;
  std::size_t start = 0;
  for (;;) {
    const auto dot = key.find('.', start);
    const std::string part = key.substr(start, dot == std::string::npos ? dot : dot - start);
    if (part.empty()) throw validation_error("override key '" + key + "' has an empty segment");
    if (dot == std::string::npos) {
      (*node)[part] = parsed;
      return;
    }
    node = &(*node)[part];
    start = dot + 1;
  }
}

inline json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open config file '" + path + "'");
  json root = json::parse(in, nullptr, false);
  if (root.is_discarded()) throw validation_error("config file '" + path + "' is not valid JSON");
  if (root.is_null()) root = json::object();
  if (!root.is_object()) throw validation_error("config file '" + path + "' must hold a JSON object");
  return root;
}

// path == "" yields the all-defaults scenario.
inline Scenario parse_config(const std::string& path,
                             const std::vector<std::string>& overrides = {}) {
  json root = path.empty() ? json::object() : load_config_file(path);
  for (const auto& o : overrides) apply_override(root, o);
  Scenario s = scenario_from_json(root);
  s.validate();
  return s;
}

}  // namespace wpusn
