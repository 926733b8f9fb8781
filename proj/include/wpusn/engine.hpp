// Monte Carlo experiment engine: deploys devices, realizes fading, evaluates
// the selected CSI-free scheme across all PBs and aggregates coverage and
// worst-case energy statistics.
//
// Randomness is organized per work unit (replicate/cell, PB, device, draw)
// through hashed counter streams, so results are independent of evaluation
// order and thread count, and deployment replicates can run concurrently.
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdint>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "wpusn/channel.hpp"
#include "wpusn/common.hpp"
#include "wpusn/placement.hpp"
#include "wpusn/power.hpp"
#include "wpusn/propagation.hpp"
#include "wpusn/scenario.hpp"
#include "wpusn/schemes.hpp"
#include "wpusn/soil.hpp"

namespace wpusn {

struct DeviceOutcome {
  Vec2 position;
  double incident_w = 0.0;  // fading-averaged G_i
};

struct ReplicateOutcome {
  Deployment deployment;
  std::vector<DeviceOutcome> devices;
  double min_w = 0.0;
  double mean_w = 0.0;
  double coverage = 0.0;  // fraction of devices with G_i >= threshold
};

struct EnergyReport {
  double worst_case_avg_w = 0.0;  // aggregated over replicate minima
  double mean_avg_w = 0.0;
  double coverage = 0.0;
  std::vector<ReplicateOutcome> replicates;
};

struct HeatmapResult {
  int resolution = 0;
  std::vector<double> xs, ys;   // cell centers
  std::vector<double> dbm;      // row-major [iy*res + ix]; NaN outside the disk
  double coverage = 0.0;        // fraction of in-disk cells above threshold
  Deployment deployment;
};

struct SweepCell {
  double value = 0.0;
  SchemeKind scheme = SchemeKind::SA;
  std::string status;  // "ok" | "insufficient_budget" | "infeasible"
  double worst_case_avg_w = 0.0;
  double coverage = 0.0;
};

struct SweepResult {
  SweepAxis axis = SweepAxis::total_antennas;
  std::vector<SweepCell> cells;
};

namespace detail {

inline void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min(threads, count);
  pool.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

inline double aggregate(std::vector<double> values, Aggregation kind) {
  if (values.empty()) return 0.0;
  if (kind == Aggregation::mean) {
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace detail

// Device positions i.i.d. area-uniform over the disk; one stream per device
// so the point set is stable under changes of device count.
inline std::vector<Vec2> deploy_devices(double radius, int n, std::uint64_t seed,
                                        std::uint64_t replicate) {
  if (n < 1) throw validation_error("deploy_devices: need at least one device");
  std::vector<Vec2> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rng::Stream s(rng::derive(seed, {rng::tag::devices, replicate, static_cast<std::uint64_t>(i)}));
    const double r = radius * std::sqrt(s.next_double());
    const double a = s.next_double(0.0, 2.0 * constants::pi);
    out[static_cast<std::size_t>(i)] = {r * std::cos(a), r * std::sin(a)};
  }
  return out;
}

// PB positions and orientations for one deployment replicate.
inline Deployment place_pbs(const Scenario& s, const std::vector<Vec2>& devices,
                            std::uint64_t replicate) {
  Deployment d;
  switch (s.placement.method) {
    case PlacementMethod::fixed:
      d.positions = s.fixed_positions();
      break;
    case PlacementMethod::kmeans: {
      rng::Stream stream(rng::derive(s.seed, {rng::tag::kmeans, replicate}));
      d.positions = kmeans_place(devices, s.pb_count, stream, s.placement.kmeans_restarts).centroids;
      break;
    }
    case PlacementMethod::effc:
      d.positions =
          effc_place({s.pb_count, s.rf.path_loss_exponent, s.radius_m, s.effc_step()}).positions;
      break;
  }
  d.orientations.resize(d.positions.size());
  for (std::size_t m = 0; m < d.positions.size(); ++m) {
    switch (s.orientation_policy) {
      case OrientationPolicy::fixed:
        d.orientations[m] = s.fixed_orientation;
        break;
      case OrientationPolicy::radial:
        d.orientations[m] = (d.positions[m].x == 0.0 && d.positions[m].y == 0.0)
                                ? 0.0
                                : wrap_angle(std::atan2(-d.positions[m].y, -d.positions[m].x));
        break;
      case OrientationPolicy::random: {
        rng::Stream stream(rng::derive(
            s.seed, {rng::tag::orientation, replicate, static_cast<std::uint64_t>(m)}));
        d.orientations[m] = stream.next_double(0.0, 2.0 * constants::pi);
        break;
      }
    }
  }
  return d;
}

// Per-scenario link evaluation. Precomputes the soil constants, transmit
// power and the scheme's deterministic LOS terms per link; each fading draw
// then costs O(Q).
class LinkEvaluator {
 public:
  explicit LinkEvaluator(const Scenario& s)
      : scenario_(s),
        soil_(s.resolved_soil()),
        fading_(s.fading_params()),
        q_(s.antennas_per_pb),
        p_watts_(s.transmit_power()) {
    const SoilConstants sc = attenuation_constants(soil_, s.rf);
    alpha_ = sc.alpha_np_per_m;
    beta_ = sc.beta_rad_per_m;
    if (s.scheme == SchemeKind::AA_SS_I || s.scheme == SchemeKind::AA_SS_II ||
        s.scheme == SchemeKind::RAB) {
      precoder_ = make_precoder(
          s.scheme == SchemeKind::AA_SS_I ? SchemeKind::AA_SS_I : SchemeKind::AA_SS_II, q_, p_watts_);
      // u^T = v^T L so that v^T w = u^T g for covariance-shaped draws
      const cvec& v = precoder_.vectors[0];
      u_ = v;
      if (!fading_.nlos_chol.empty()) {
        u_.assign(static_cast<std::size_t>(q_), {0.0, 0.0});
        for (std::size_t j = 0; j < u_.size(); ++j)
          for (std::size_t i = j; i < u_.size(); ++i) u_[j] += v[i] * fading_.nlos_chol[i][j];
      }
    }
  }

  double transmit_power_w() const { return p_watts_; }
  int antennas() const { return q_; }
  const SoilProperties& soil() const { return soil_; }

  double link_delta(const Vec2& pb, const Vec2& device) const {
    const double horizontal = std::sqrt(dist2(pb, device));
    const LinkGeometry geom = LinkGeometry::from_horizontal(horizontal, scenario_.rf.pb_height_m,
                                                            scenario_.burial_depth_m);
    return air_loss(geom, scenario_.rf) * refraction_loss(soil_) * soil_loss(geom, alpha_, beta_);
  }

  // Deterministic per-link terms reused by every draw.
  struct LinkContext {
    double delta = 1.0;
    double theta = 0.0;
    cvec los;                           // SA / AA-IS path
    std::complex<double> ss_dot{0, 0};  // v^T los(theta) for the AA-SS schemes
    std::complex<double> rab_s1{0, 0};  // sum over rotation steps of v^T los(theta_step)
    double rab_s2 = 0.0;                // sum of |v^T los(theta_step)|^2
  };

  LinkContext make_context(const Vec2& pb, const UlaConfig& ula, const Vec2& device) const {
    ula.validate();
    if (ula.antennas != q_)
      throw validation_error("link: ULA antenna count does not match the scenario");
    LinkContext ctx;
    ctx.delta = link_delta(pb, device);
    ctx.theta = azimuth(pb.x, pb.y, ula.orientation, device.x, device.y);
    switch (scenario_.scheme) {
      case SchemeKind::SA:
      case SchemeKind::AA_IS:
        ctx.los = los_vector(ctx.theta, q_);
        break;
      case SchemeKind::AA_SS_I:
      case SchemeKind::AA_SS_II:
        ctx.ss_dot = dot_with_v(los_vector(ctx.theta, q_));
        break;
      case SchemeKind::RAB: {
        for (int step = 1; step <= q_; ++step) {
          const double theta = ctx.theta + static_cast<double>(step) * constants::pi / q_;
          const std::complex<double> a = dot_with_v(los_vector(theta, q_));
          ctx.rab_s1 += a;
          ctx.rab_s2 += std::norm(a);
        }
        break;
      }
      case SchemeKind::FULL_CSI:
        throw not_implemented_error("FULL_CSI evaluation is out of scope");
    }
    return ctx;
  }

  // One fading draw of the incident RF power for a prepared link. Consumes
  // exactly Q complex normals (per rotation step when RAB redraws).
  double draw(const LinkContext& ctx, rng::Stream& stream) const {
    const double lc = fading_.los_coef();
    const double nc = fading_.nlos_coef();
    switch (scenario_.scheme) {
      case SchemeKind::SA:
      case SchemeKind::AA_IS: {
        // identical block averages: (p/Q) sum_t |h_t|^2 / delta
        double acc = 0.0;
        if (fading_.nlos_chol.empty()) {
          for (int t = 0; t < q_; ++t)
            acc += std::norm(lc * ctx.los[static_cast<std::size_t>(t)] + nc * stream.next_cnormal());
        } else {
          const cvec w = sample_w(stream);
          for (int t = 0; t < q_; ++t)
            acc += std::norm(lc * ctx.los[static_cast<std::size_t>(t)] +
                             nc * w[static_cast<std::size_t>(t)]);
        }
        return p_watts_ * acc / (static_cast<double>(q_) * ctx.delta);
      }
      case SchemeKind::AA_SS_I:
      case SchemeKind::AA_SS_II: {
        const std::complex<double> dot = lc * ctx.ss_dot + nc * dot_u_with_g(stream);
        return precoder_.signal_power_w[0] * std::norm(dot) / ctx.delta;
      }
      case SchemeKind::RAB: {
        if (scenario_.rab_redraw_per_step) {
          double acc = 0.0;
          for (int step = 1; step <= q_; ++step) {
            const double theta = ctx.theta + static_cast<double>(step) * constants::pi / q_;
            const std::complex<double> a = dot_with_v(los_vector(theta, q_));
            const std::complex<double> dot = lc * a + nc * dot_u_with_g(stream);
            acc += std::norm(dot);
          }
          return precoder_.signal_power_w[0] * acc / (static_cast<double>(q_) * ctx.delta);
        }
        // shared NLOS draw across rotation steps:
        // sum_step |lc*a_step + c|^2 = lc^2*S2 + 2 Re(conj(c)*lc*S1) + Q*|c|^2
        const std::complex<double> c = nc * dot_u_with_g(stream);
        const double total = lc * lc * ctx.rab_s2 +
                             2.0 * (std::conj(c) * (lc * ctx.rab_s1)).real() +
                             static_cast<double>(q_) * std::norm(c);
        return precoder_.signal_power_w[0] * total / (static_cast<double>(q_) * ctx.delta);
      }
      case SchemeKind::FULL_CSI:
        throw not_implemented_error("FULL_CSI evaluation is out of scope");
    }
    return 0.0;
  }

  // Reference path composing the module operations directly; the optimized
  // draw() must agree with this to numerical precision.
  double evaluate_draw(const Vec2& pb, const UlaConfig& ula, const Vec2& device,
                       rng::Stream& stream) const {
    const double delta = link_delta(pb, device);
    const double theta = azimuth(pb.x, pb.y, ula.orientation, device.x, device.y);
    switch (scenario_.scheme) {
      case SchemeKind::SA:
        return incident_power_sa(sample(theta, fading_, q_, stream), p_watts_, delta);
      case SchemeKind::AA_IS:
        return incident_power(sample(theta, fading_, q_, stream),
                              make_precoder(SchemeKind::AA_IS, q_, p_watts_), delta);
      case SchemeKind::AA_SS_I:
      case SchemeKind::AA_SS_II:
        return incident_power(sample(theta, fading_, q_, stream), precoder_, delta);
      case SchemeKind::RAB: {
        if (!scenario_.rab_redraw_per_step)
          return incident_power_rab(theta, fading_, q_, p_watts_, delta, stream);
        double acc = 0.0;
        const PrecoderSpec spec = make_precoder(SchemeKind::AA_SS_II, q_, p_watts_);
        for (int step = 1; step <= q_; ++step) {
          const double th = theta + static_cast<double>(step) * constants::pi / q_;
          acc += incident_power(sample(th, fading_, q_, stream), spec, delta);
        }
        return acc / q_;
      }
      case SchemeKind::FULL_CSI:
        throw not_implemented_error("FULL_CSI evaluation is out of scope");
    }
    return 0.0;
  }

 private:
  cvec sample_w(rng::Stream& stream) const {
    cvec g(static_cast<std::size_t>(q_));
    for (auto& z : g) z = stream.next_cnormal();
    if (fading_.nlos_chol.empty()) return g;
    cvec w(static_cast<std::size_t>(q_), {0.0, 0.0});
    for (std::size_t i = 0; i < w.size(); ++i)
      for (std::size_t j = 0; j <= i; ++j) w[i] += fading_.nlos_chol[i][j] * g[j];
    return w;
  }

  std::complex<double> dot_with_v(const cvec& h) const {
    const cvec& v = precoder_.vectors[0];
    std::complex<double> dot{0.0, 0.0};
    for (std::size_t t = 0; t < h.size(); ++t) dot += v[t] * h[t];
    return dot;
  }

  std::complex<double> dot_u_with_g(rng::Stream& stream) const {
    std::complex<double> dot{0.0, 0.0};
    for (std::size_t t = 0; t < u_.size(); ++t) dot += u_[t] * stream.next_cnormal();
    return dot;
  }

  Scenario scenario_;
  SoilProperties soil_;
  FadingParams fading_;
  int q_;
  double p_watts_;
  double alpha_ = 0.0, beta_ = 0.0;
  PrecoderSpec precoder_;  // AA-SS / RAB static precoder
  cvec u_;                 // v^T L for covariance-shaped scalar draws
};

// Full Monte Carlo run: per deployment replicate, fading-average every
// device's total incident power; report per-device values, replicate minima
// and coverage against the EH threshold. No partial results on error.
inline EnergyReport run(const Scenario& s, int threads = 1) {
  s.validate();
  const LinkEvaluator eval(s);
  const double threshold = s.eh_threshold_w();
  const int reps = s.trials.deployments;
  const int draws = s.trials.fading_draws;

  EnergyReport report;
  report.replicates.resize(static_cast<std::size_t>(reps));

  detail::parallel_for(reps, threads, [&](int rep) {
    const auto urep = static_cast<std::uint64_t>(rep);
    ReplicateOutcome out;
    const std::vector<Vec2> devices = deploy_devices(s.radius_m, s.device_count, s.seed, urep);
    out.deployment = place_pbs(s, devices, urep);
    out.devices.resize(devices.size());

    double min_g = std::numeric_limits<double>::infinity();
    double sum_g = 0.0;
    int covered = 0;
    for (std::size_t i = 0; i < devices.size(); ++i) {
      double g = 0.0;
      for (std::size_t m = 0; m < out.deployment.positions.size(); ++m) {
        const LinkEvaluator::LinkContext ctx = eval.make_context(
            out.deployment.positions[m],
            {s.antennas_per_pb, out.deployment.orientations[m]}, devices[i]);
        double acc = 0.0;
        for (int d = 0; d < draws; ++d) {
          rng::Stream stream(rng::derive(
              s.seed, {rng::tag::fading, urep, static_cast<std::uint64_t>(m),
                       static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(d)}));
          acc += eval.draw(ctx, stream);
        }
        g += acc / draws;
      }
      out.devices[i] = {devices[i], g};
      min_g = std::min(min_g, g);
      sum_g += g;
      if (g >= threshold) ++covered;
    }
    out.min_w = min_g;
    out.mean_w = sum_g / static_cast<double>(devices.size());
    out.coverage = static_cast<double>(covered) / static_cast<double>(devices.size());
    report.replicates[static_cast<std::size_t>(rep)] = std::move(out);
  });

  std::vector<double> mins, means, covs;
  mins.reserve(report.replicates.size());
  for (const auto& r : report.replicates) {
    mins.push_back(r.min_w);
    means.push_back(r.mean_w);
    covs.push_back(r.coverage);
  }
  report.worst_case_avg_w = detail::aggregate(mins, s.aggregation);
  report.mean_avg_w = detail::aggregate(means, Aggregation::mean);
  report.coverage = detail::aggregate(covs, Aggregation::mean);
  return report;
}

// Fading-averaged incident power on a grid of buried probes; cells outside
// the service disk are NaN. Uses the replicate-0 deployment.
inline HeatmapResult heatmap(const Scenario& s, int resolution = 0, int threads = 1) {
  s.validate();
  if (resolution <= 0) resolution = s.heatmap.resolution;
  if (resolution < 16) throw validation_error("heatmap: resolution must be >= 16");
  const LinkEvaluator eval(s);
  const int draws = s.heatmap.fading_draws;

  HeatmapResult hm;
  hm.resolution = resolution;
  const std::vector<Vec2> devices =
      s.placement.method == PlacementMethod::kmeans
          ? deploy_devices(s.radius_m, s.device_count, s.seed, 0)
          : std::vector<Vec2>{};
  hm.deployment = place_pbs(s, devices, 0);

  hm.xs.resize(static_cast<std::size_t>(resolution));
  hm.ys.resize(static_cast<std::size_t>(resolution));
  const double cell = 2.0 * s.radius_m / resolution;
  for (int i = 0; i < resolution; ++i) {
    hm.xs[static_cast<std::size_t>(i)] = -s.radius_m + (i + 0.5) * cell;
    hm.ys[static_cast<std::size_t>(i)] = -s.radius_m + (i + 0.5) * cell;
  }
  hm.dbm.assign(static_cast<std::size_t>(resolution) * resolution,
                std::numeric_limits<double>::quiet_NaN());

  std::vector<int> in_disk_count(static_cast<std::size_t>(resolution), 0);
  std::vector<int> covered_count(static_cast<std::size_t>(resolution), 0);
  const double threshold = s.eh_threshold_w();

  detail::parallel_for(resolution, threads, [&](int iy) {
    for (int ix = 0; ix < resolution; ++ix) {
      const Vec2 probe{hm.xs[static_cast<std::size_t>(ix)], hm.ys[static_cast<std::size_t>(iy)]};
      if (probe.x * probe.x + probe.y * probe.y > s.radius_m * s.radius_m) continue;
      const auto cell_id =
          static_cast<std::uint64_t>(iy) * static_cast<std::uint64_t>(resolution) +
          static_cast<std::uint64_t>(ix);
      double g = 0.0;
      for (std::size_t m = 0; m < hm.deployment.positions.size(); ++m) {
        const LinkEvaluator::LinkContext ctx = eval.make_context(
            hm.deployment.positions[m], {s.antennas_per_pb, hm.deployment.orientations[m]},
            probe);
        double acc = 0.0;
        for (int d = 0; d < draws; ++d) {
          rng::Stream stream(
              rng::derive(s.seed, {rng::tag::heatmap, static_cast<std::uint64_t>(m), cell_id,
                                   static_cast<std::uint64_t>(d)}));
          acc += eval.draw(ctx, stream);
        }
        g += acc / draws;
      }
      hm.dbm[static_cast<std::size_t>(cell_id)] = watts_to_dbm(g);
      ++in_disk_count[static_cast<std::size_t>(iy)];
      if (g >= threshold) ++covered_count[static_cast<std::size_t>(iy)];
    }
  });

  int cells = 0, covered = 0;
  for (int iy = 0; iy < resolution; ++iy) {
    cells += in_disk_count[static_cast<std::size_t>(iy)];
    covered += covered_count[static_cast<std::size_t>(iy)];
  }
  hm.coverage = cells > 0 ? static_cast<double>(covered) / cells : 0.0;
  return hm;
}

// Parameter sweep with identical seeds across schemes for paired comparison.
// Infeasible cells are recorded explicitly, never omitted.
inline SweepResult sweep(const Scenario& base, int threads = 1) {
  if (base.sweep.values.empty()) throw validation_error("sweep: no axis values given");
  std::vector<SchemeKind> schemes = base.sweep.schemes;
  if (schemes.empty())
    schemes = {SchemeKind::SA, SchemeKind::AA_IS, SchemeKind::AA_SS_I, SchemeKind::AA_SS_II,
               SchemeKind::RAB};

  SweepResult result;
  result.axis = base.sweep.axis;
  for (double value : base.sweep.values) {
    Scenario s = base;
    switch (base.sweep.axis) {
      case SweepAxis::total_antennas: {
        const auto l = static_cast<int>(value);
        if (l != value || l < base.pb_count || l % base.pb_count != 0)
          throw validation_error("sweep: total antennas L must be a positive multiple of M");
        s.antennas_per_pb = l / base.pb_count;
        break;
      }
      case SweepAxis::vwc:
        if (base.provider != DielectricProvider::mineralogy)
          throw validation_error("sweep: the vwc axis requires the mineralogy dielectric provider");
        s.soil.vwc = value;
        break;
      case SweepAxis::depth:
        s.burial_depth_m = value;
        break;
      case SweepAxis::rician_k:
        s.rician_k = value;
        break;
      case SweepAxis::eh_threshold:
        s.eh_threshold_dbm = value;
        break;
    }
    for (SchemeKind scheme : schemes) {
      Scenario cell = s;
      cell.scheme = scheme;
      SweepCell out;
      out.value = value;
      out.scheme = scheme;
      try {
        cell.validate();
        const EnergyReport r = run(cell, threads);
        out.status = "ok";
        out.worst_case_avg_w = r.worst_case_avg_w;
        out.coverage = r.coverage;
      } catch (const insufficient_budget_error&) {
        out.status = "insufficient_budget";
      } catch (const validation_error&) {
        out.status = "infeasible";
      }
      result.cells.push_back(out);
    }
  }
  return result;
}

}  // namespace wpusn
