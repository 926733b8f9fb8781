// A fully-resolved simulation scenario. Validation is fail-fast: anything a
// module would reject later is rejected here before computation starts.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wpusn/channel.hpp"
#include "wpusn/common.hpp"
#include "wpusn/placement.hpp"
#include "wpusn/power.hpp"
#include "wpusn/propagation.hpp"
#include "wpusn/schemes.hpp"
#include "wpusn/soil.hpp"

namespace wpusn {

enum class PowerModel { ideal, practical };
enum class OrientationPolicy { random, fixed, radial };
enum class PlacementMethod { fixed, kmeans, effc };
enum class Aggregation { mean, median };

struct PlacementConfig {
  PlacementMethod method = PlacementMethod::fixed;
  std::vector<Vec2> positions;  // fixed placement; default center for M = 1
  double effc_step_m = 0.0;     // 0 = radius/500
  int kmeans_restarts = 10;
};

struct TrialConfig {
  int deployments = 100;
  int fading_draws = 200;
};

struct HeatmapConfig {
  int resolution = 64;
  int fading_draws = 500;
};

enum class SweepAxis { total_antennas, vwc, depth, rician_k, eh_threshold };

struct SweepConfig {
  SweepAxis axis = SweepAxis::total_antennas;
  std::vector<double> values;        // eh_threshold values are dBm
  std::vector<SchemeKind> schemes;   // empty = all five CSI-free schemes
};

struct Scenario {
  // area & devices
  double radius_m = 5.0;
  int device_count = 64;
  double burial_depth_m = 0.35;

  // PBs
  int pb_count = 1;
  int antennas_per_pb = 4;
  SchemeKind scheme = SchemeKind::RAB;
  OrientationPolicy orientation_policy = OrientationPolicy::random;
  double fixed_orientation = 0.0;
  PlacementConfig placement;

  // propagation & fading
  DielectricProvider provider = DielectricProvider::mineralogy;
  SoilProperties soil{0.15, 0.38, 1.0, 1.0, 0.0};
  RfParams rf;
  double rician_k = 10.0;
  double nlos_exp_corr = 0.0;  // 0 = identity NLOS covariance
  bool rab_redraw_per_step = false;

  // power
  PowerModel power_model = PowerModel::ideal;
  PowerBudget budget;
  MotorParams motor;

  // experiment
  double eh_threshold_dbm = -22.0;
  TrialConfig trials;
  Aggregation aggregation = Aggregation::mean;
  std::uint64_t seed = 1;
  HeatmapConfig heatmap;
  SweepConfig sweep;

  double eh_threshold_w() const { return dbm_to_watts(eh_threshold_dbm); }

  double effc_step() const {
    return placement.effc_step_m > 0.0 ? placement.effc_step_m : radius_m / 500.0;
  }

  SoilProperties resolved_soil() const { return resolve_soil(provider, soil, rf.frequency_hz); }

  FadingParams fading_params() const {
    if (nlos_exp_corr == 0.0) return FadingParams::identity(rician_k);
    const auto q = static_cast<std::size_t>(antennas_per_pb);
    cmat r(q, cvec(q));
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j)
        r[i][j] = {std::pow(nlos_exp_corr, std::abs(static_cast<double>(i) -
                                                    static_cast<double>(j))),
                   0.0};
    return FadingParams::with_covariance(rician_k, r);
  }

  // PB transmit power under the configured power model; throws
  // insufficient_budget_error when the practical budget cannot cover it.
  double transmit_power() const {
    if (power_model == PowerModel::ideal) return transmit_power_ideal(budget);
    if (scheme == SchemeKind::RAB) return transmit_power_rab(budget, motor, antennas_per_pb);
    return transmit_power_practical(budget, scheme, antennas_per_pb);
  }

  void validate() const {
    if (!(radius_m > 0.0)) throw validation_error("scenario: radius must be > 0");
    if (device_count < 1) throw validation_error("scenario: need at least one device");
    if (!(burial_depth_m > 0.0)) throw validation_error("scenario: burial depth must be > 0");
    if (pb_count < 1) throw validation_error("scenario: need at least one PB");
    if (antennas_per_pb < 1) throw validation_error("scenario: antennas must be >= 1");
    if (!(rician_k >= 0.0)) throw validation_error("scenario: rician_k must be >= 0");
    if (!(nlos_exp_corr >= 0.0 && nlos_exp_corr < 1.0))
      throw validation_error("scenario: nlos_exp_corr must be in [0, 1)");
    if (trials.deployments < 1 || trials.fading_draws < 1)
      throw validation_error("scenario: trials must be >= 1");
    if (heatmap.resolution < 16) throw validation_error("scenario: heatmap resolution must be >= 16");
    if (heatmap.fading_draws < 1) throw validation_error("scenario: heatmap draws must be >= 1");

    rf.validate();
    budget.validate();
    motor.validate();
    resolved_soil();                // provider range checks
    (void)fading_params();          // covariance PSD check
    validate_scheme(scheme, antennas_per_pb, rab_max_antennas(motor));
    if (power_model == PowerModel::practical) (void)transmit_power();

    switch (placement.method) {
      case PlacementMethod::fixed: {
        std::vector<Vec2> pos = placement.positions;
        if (pos.empty() && pb_count == 1) pos.push_back({0.0, 0.0});
        if (static_cast<int>(pos.size()) != pb_count)
          throw validation_error("placement: fixed needs one position per PB");
        for (const auto& b : pos)
          if (b.x * b.x + b.y * b.y > radius_m * radius_m + 1e-9)
            throw validation_error("placement: PB outside the service area");
        break;
      }
      case PlacementMethod::kmeans:
        if (device_count < pb_count)
          throw validation_error("placement: kmeans needs at least as many devices as PBs");
        if (placement.kmeans_restarts < 1)
          throw validation_error("placement: kmeans_restarts must be >= 1");
        break;
      case PlacementMethod::effc:
        if (pb_count >= 2)
          EffcParams{pb_count, rf.path_loss_exponent, radius_m, effc_step()}.validate();
        break;
    }
  }

  std::vector<Vec2> fixed_positions() const {
    std::vector<Vec2> pos = placement.positions;
    if (pos.empty() && pb_count == 1) pos.push_back({0.0, 0.0});
    return pos;
  }
};

inline const char* to_string(PowerModel m) {
  return m == PowerModel::ideal ? "ideal" : "practical";
}
inline const char* to_string(OrientationPolicy p) {
  switch (p) {
    case OrientationPolicy::random: return "random";
    case OrientationPolicy::fixed: return "fixed";
    case OrientationPolicy::radial: return "radial";
  }
  return "?";
}
inline const char* to_string(PlacementMethod m) {
  switch (m) {
    case PlacementMethod::fixed: return "fixed";
    case PlacementMethod::kmeans: return "kmeans";
    case PlacementMethod::effc: return "effc";
  }
  return "?";
}
inline const char* to_string(Aggregation a) {
  return a == Aggregation::mean ? "mean" : "median";
}
inline const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::total_antennas: return "total_antennas";
    case SweepAxis::vwc: return "vwc";
    case SweepAxis::depth: return "depth";
    case SweepAxis::rician_k: return "rician_k";
    case SweepAxis::eh_threshold: return "eh_threshold";
  }
  return "?";
}
inline const char* to_string(DielectricProvider p) {
  return p == DielectricProvider::direct ? "direct" : "mineralogy";
}

}  // namespace wpusn
