// Multi-PB deployment: position-aware K-Means clustering and the
// position-agnostic equally-far-from-center (EFFC) ring construction.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "wpusn/common.hpp"
#include "wpusn/rng.hpp"

namespace wpusn {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double dist2(const Vec2& a, const Vec2& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

struct Deployment {
  std::vector<Vec2> positions;
  std::vector<double> orientations;  // boresight headings, radians
};

struct KmeansResult {
  std::vector<Vec2> centroids;
  std::vector<int> assignment;            // device -> PB index
  std::vector<double> objective_history;  // after each assignment pass
  double objective = 0.0;
  int iterations = 0;
};

namespace detail {

// One Lloyd run from the given initial centroids. The objective (sum of
// squared device-to-assigned-PB distances) is recorded after every
// assignment pass and never increases.
inline KmeansResult lloyd(const std::vector<Vec2>& devices, std::vector<Vec2> centroids,
                          int max_iterations = 1000) {
  const std::size_t n = devices.size();
  const std::size_t m = centroids.size();
  KmeansResult res;
  res.assignment.assign(n, -1);

  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    double objective = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < m; ++j) {
        const double d = dist2(devices[i], centroids[j]);
        if (d < best_d) {
          best_d = d;
          best = static_cast<int>(j);
        }
      }
      if (res.assignment[i] != best) changed = true;
      res.assignment[i] = best;
      objective += best_d;
    }
    res.objective_history.push_back(objective);
    res.objective = objective;
    res.iterations = iter + 1;
    if (!changed && iter > 0) break;

    std::vector<Vec2> sums(m);
    std::vector<int> counts(m, 0);
    for (std::size_t i = 0; i < n; ++i) {
      sums[static_cast<std::size_t>(res.assignment[i])].x += devices[i].x;
      sums[static_cast<std::size_t>(res.assignment[i])].y += devices[i].y;
      ++counts[static_cast<std::size_t>(res.assignment[i])];
    }
    std::vector<double> repair_dist;
    for (std::size_t j = 0; j < m; ++j) {
      if (counts[j] > 0) {
        centroids[j] = {sums[j].x / counts[j], sums[j].y / counts[j]};
        continue;
      }
      // Empty cluster: reseed at the device farthest from its current PB.
      if (repair_dist.empty()) {
        repair_dist.resize(n);
        for (std::size_t i = 0; i < n; ++i)
          repair_dist[i] =
              dist2(devices[i], centroids[static_cast<std::size_t>(res.assignment[i])]);
      }
      const std::size_t far = static_cast<std::size_t>(
          std::max_element(repair_dist.begin(), repair_dist.end()) - repair_dist.begin());
      centroids[j] = devices[far];
      repair_dist[far] = -1.0;  // each empty cluster claims a distinct device
    }
  }
  res.centroids = std::move(centroids);
  return res;
}

}  // namespace detail

// K-Means over the above-ground projections of the devices. Runs
// `restarts` seeded Lloyd passes from uniform random starts inside the
// devices' bounding disk and keeps the lowest objective.
inline KmeansResult kmeans_place(const std::vector<Vec2>& devices, int m, rng::Stream& stream,
                                 int restarts = 10) {
  if (devices.empty()) throw validation_error("kmeans: empty device set");
  if (m < 1) throw validation_error("kmeans: need at least one PB");
  if (static_cast<std::size_t>(m) > devices.size())
    throw validation_error("kmeans: more PBs than devices");
  if (restarts < 1) restarts = 1;

  Vec2 center{0.0, 0.0};
  for (const auto& d : devices) {
    center.x += d.x;
    center.y += d.y;
  }
  center.x /= static_cast<double>(devices.size());
  center.y /= static_cast<double>(devices.size());
  double radius2 = 0.0;
  for (const auto& d : devices) radius2 = std::max(radius2, dist2(d, center));
  const double radius = std::sqrt(radius2);

  KmeansResult best;
  best.objective = std::numeric_limits<double>::infinity();
  for (int r = 0; r < restarts; ++r) {
    std::vector<Vec2> init(static_cast<std::size_t>(m));
    for (auto& c : init) {
      // area-uniform point in the bounding disk
      const double rr = radius * std::sqrt(stream.next_double());
      const double a = stream.next_double(0.0, 2.0 * constants::pi);
      c = {center.x + rr * std::cos(a), center.y + rr * std::sin(a)};
    }
    KmeansResult run = detail::lloyd(devices, std::move(init));
    if (run.objective < best.objective) best = std::move(run);
  }
  return best;
}

struct EffcParams {
  int pb_count = 2;       // M
  double exponent = 2.0;  // tau
  double radius = 5.0;    // R
  double step = 0.01;     // delta r

  void validate() const {
    if (pb_count < 1) throw validation_error("effc: pb_count must be >= 1");
    if (!(exponent >= 1.0)) throw validation_error("effc: exponent must be >= 1");
    if (!(radius > 0.0)) throw validation_error("effc: radius must be > 0");
    if (!(step > 0.0 && step < radius))
      throw validation_error("effc: step must be in (0, radius)");
  }
};

struct EffcEstimates {
  double center;       // E_c : configuration I, probe at the center
  double edge_1;       // E_e1: configuration I, probe on the edge
  double equidistant;  // E_x : configuration II, probe between center and ring
  double edge_2;       // E_e2: configuration II, probe on the edge
};

// The four energy estimates for a candidate ring radius r. Configuration II
// needs M >= 3 (its probe distance x degenerates for M = 2).
inline EffcEstimates effc_estimates(const EffcParams& params, double r) {
  params.validate();
  if (!(r > 0.0 && r <= params.radius))
    throw validation_error("effc_estimates: r must be in (0, R]");
  const int m_count = params.pb_count;
  const double tau = params.exponent;
  const double big_r = params.radius;

  EffcEstimates e{};
  e.center = m_count * std::pow(r, -tau);
  e.edge_1 = 0.0;
  for (int m = 1; m <= m_count; ++m) {
    const double ang = 2.0 * constants::pi / m_count * (m - 1.5);
    e.edge_1 += std::pow(r * r + big_r * big_r - 2.0 * r * big_r * std::cos(ang), -tau / 2.0);
  }
  if (m_count >= 3) {
    const double x = r / (2.0 * std::cos(constants::pi / (m_count - 1)));
    e.equidistant = std::pow(x, -tau);
    e.edge_2 = std::pow(big_r, -tau);
    for (int m = 1; m <= m_count - 1; ++m) {
      const double ang = 2.0 * constants::pi / (m_count - 1) * (m - 1.5);
      e.equidistant +=
          std::pow(x * x + r * r - 2.0 * x * r * std::cos(ang), -tau / 2.0);
      e.edge_2 += std::pow(big_r * big_r + r * r - 2.0 * big_r * r * std::cos(ang), -tau / 2.0);
    }
  } else {
    // configuration II infeasible: never preferred
    e.equidistant = -std::numeric_limits<double>::infinity();
    e.edge_2 = -std::numeric_limits<double>::infinity();
  }
  return e;
}

// Scans r over {dr, 2dr, ...} < R, keeping the configuration and radius whose
// min-estimate beats the running best (initialized to M*R^-tau).
inline Deployment effc_place(const EffcParams& params) {
  params.validate();
  const int m_count = params.pb_count;
  if (m_count == 1) return {{{0.0, 0.0}}, {0.0}};

  double best = m_count * std::pow(params.radius, -params.exponent);
  double r_star = 0.0;
  int config = 0;
  for (int k = 1; k * params.step < params.radius; ++k) {
    const double r = k * params.step;
    const EffcEstimates e = effc_estimates(params, r);
    const double min_1 = std::min(e.center, e.edge_1);
    const double min_2 = std::min(e.equidistant, e.edge_2);
    if (min_1 > min_2) {
      if (best < min_1) {
        best = min_1;
        r_star = r;
        config = 1;
      }
    } else {
      if (best < min_2) {
        best = min_2;
        r_star = r;
        config = 2;
      }
    }
  }
  if (config == 0)
    throw validation_error("effc: no ring radius improves on the all-at-edge estimate");

  Deployment d;
  d.positions.resize(static_cast<std::size_t>(m_count));
  d.orientations.assign(static_cast<std::size_t>(m_count), 0.0);
  if (config == 1) {
    const double phi = 2.0 * constants::pi / m_count;
    for (int m = 0; m < m_count; ++m)
      d.positions[static_cast<std::size_t>(m)] = {r_star * std::cos(phi * m),
                                                  r_star * std::sin(phi * m)};
  } else {
    const double phi = 2.0 * constants::pi / (m_count - 1);
    d.positions[0] = {0.0, 0.0};
    for (int m = 1; m < m_count; ++m)
      d.positions[static_cast<std::size_t>(m)] = {r_star * std::cos(phi * (m - 1)),
                                                  r_star * std::sin(phi * (m - 1))};
  }
  return d;
}

}  // namespace wpusn
