// The five CSI-free energy-transmission schemes and the per-link average
// incident RF power they deliver.
//
// Power convention: the AA-SS schemes transmit one signal at p/Q through all
// Q elements with per-element unit-magnitude weights, so the radiated total
// is p and the coherent peak gain is p*Q. SA switches the full power p
// through one antenna per subblock; AA-IS splits p across Q independent
// signals. RAB applies AA-SS-II on a rotating array with Q equal steps of
// pi/Q. FULL_CSI is a reserved identifier for an out-of-scope baseline and
// is rejected wherever execution would be required.
#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "wpusn/channel.hpp"
#include "wpusn/common.hpp"

namespace wpusn {

enum class SchemeKind { SA, AA_IS, AA_SS_I, AA_SS_II, RAB, FULL_CSI };

inline const char* to_string(SchemeKind k) {
  switch (k) {
    case SchemeKind::SA: return "SA";
    case SchemeKind::AA_IS: return "AA_IS";
    case SchemeKind::AA_SS_I: return "AA_SS_I";
    case SchemeKind::AA_SS_II: return "AA_SS_II";
    case SchemeKind::RAB: return "RAB";
    case SchemeKind::FULL_CSI: return "FULL_CSI";
  }
  return "?";
}

inline SchemeKind parse_scheme(std::string name) {
  for (auto& ch : name) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (name == "SA") return SchemeKind::SA;
  if (name == "AA_IS") return SchemeKind::AA_IS;
  if (name == "AA_SS_I") return SchemeKind::AA_SS_I;
  if (name == "AA_SS_II") return SchemeKind::AA_SS_II;
  if (name == "RAB") return SchemeKind::RAB;
  if (name == "FULL_CSI") return SchemeKind::FULL_CSI;
  throw validation_error("unknown scheme '" + name +
                         "' (expected SA, AA_IS, AA_SS_I, AA_SS_II, RAB or FULL_CSI)");
}

// Enforces per-scheme antenna constraints at validation time.
inline void validate_scheme(SchemeKind kind, int q, int rab_antenna_limit = 0) {
  if (q < 1) throw validation_error("scheme: antennas must be >= 1");
  if (kind == SchemeKind::FULL_CSI)
    throw not_implemented_error(
        "FULL_CSI is a reserved baseline identifier; the SDP-based precoder is not implemented");
  if (kind == SchemeKind::RAB) {
    if (q < 2) throw validation_error("RAB requires at least Q = 2 antenna elements");
    if (rab_antenna_limit > 0 && q > rab_antenna_limit)
      throw validation_error("RAB: Q = " + std::to_string(q) +
                             " exceeds the motor rotation limit of " +
                             std::to_string(rab_antenna_limit) + " steps per block");
  }
}

struct PrecoderSpec {
  std::vector<double> signal_power_w;  // p_k, one per energy signal
  std::vector<cvec> vectors;           // v_k

  std::size_t signals() const { return signal_power_w.size(); }

  // Total radiated power sum_k p_k*||v_k||^2; equals the PB transmit power
  // for every scheme.
  double radiated_power() const {
    double total = 0.0;
    for (std::size_t k = 0; k < vectors.size(); ++k) {
      double norm2 = 0.0;
      for (const auto& v : vectors[k]) norm2 += std::norm(v);
      total += signal_power_w[k] * norm2;
    }
    return total;
  }
};

// Static precoder of a scheme. SA is a one-antenna-at-a-time time structure
// (see incident_power_sa) and RAB is AA-SS-II plus rotation (see
// incident_power_rab); both are rejected here.
inline PrecoderSpec make_precoder(SchemeKind kind, int q, double p_watts) {
  if (q < 1) throw validation_error("precoder: q must be >= 1");
  if (!(p_watts >= 0.0)) throw validation_error("precoder: power must be >= 0");
  PrecoderSpec spec;
  switch (kind) {
    case SchemeKind::AA_IS: {
      spec.signal_power_w.assign(static_cast<std::size_t>(q), p_watts / q);
      spec.vectors.assign(static_cast<std::size_t>(q), cvec(static_cast<std::size_t>(q), {0, 0}));
      for (int k = 0; k < q; ++k)
        spec.vectors[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = {1.0, 0.0};
      break;
    }
    case SchemeKind::AA_SS_I: {
      spec.signal_power_w = {p_watts / q};
      spec.vectors = {cvec(static_cast<std::size_t>(q), {1.0, 0.0})};
      break;
    }
    case SchemeKind::AA_SS_II: {
      spec.signal_power_w = {p_watts / q};
      cvec v(static_cast<std::size_t>(q));
      for (int t = 0; t < q; ++t)
        v[static_cast<std::size_t>(t)] = {(t % 2 == 0) ? 1.0 : -1.0, 0.0};
      spec.vectors = {std::move(v)};
      break;
    }
    case SchemeKind::SA:
      throw validation_error("SA has no static precoder; use incident_power_sa");
    case SchemeKind::RAB:
      throw validation_error("RAB has no static precoder; use incident_power_rab");
    case SchemeKind::FULL_CSI:
      throw not_implemented_error("FULL_CSI precoder is out of scope");
  }
  return spec;
}

// Average incident RF power (1/delta) * sum_k p_k |v_k^T h|^2.
inline double incident_power(const cvec& h, const PrecoderSpec& spec, double delta) {
  if (!(delta > 0.0)) throw validation_error("incident_power: delta must be > 0");
  double acc = 0.0;
  for (std::size_t k = 0; k < spec.vectors.size(); ++k) {
    const cvec& v = spec.vectors[k];
    if (v.size() != h.size())
      throw validation_error("incident_power: precoder/channel dimension mismatch");
    std::complex<double> dot{0.0, 0.0};
    for (std::size_t t = 0; t < v.size(); ++t) dot += v[t] * h[t];
    acc += spec.signal_power_w[k] * std::norm(dot);
  }
  return acc / delta;
}

// SA block average: one antenna per subblock of duration T/Q, full power p.
inline double incident_power_sa(const cvec& h_per_subblock, double p_watts, double delta) {
  if (h_per_subblock.empty()) throw validation_error("incident_power_sa: no subblock channels");
  if (!(delta > 0.0)) throw validation_error("incident_power_sa: delta must be > 0");
  double acc = 0.0;
  for (const auto& h : h_per_subblock) acc += std::norm(h);
  return p_watts * acc / (static_cast<double>(h_per_subblock.size()) * delta);
}

// RAB block average against an already-sampled fading block: the NLOS draw is
// shared by all rotation steps while the steering angle advances by pi/steps.
inline double incident_power_rab_block(double theta0, const FadingBlock& block, int q,
                                       double p_watts, double delta, int steps = 0) {
  if (q < 2) throw validation_error("RAB requires at least Q = 2 antenna elements");
  if (!(delta > 0.0)) throw validation_error("incident_power_rab: delta must be > 0");
  if (steps <= 0) steps = q;
  const PrecoderSpec spec = make_precoder(SchemeKind::AA_SS_II, q, p_watts);
  double acc = 0.0;
  for (int step = 1; step <= steps; ++step) {
    const double theta = theta0 + static_cast<double>(step) * constants::pi / steps;
    acc += incident_power(block.realize(theta), spec, delta);
  }
  return acc / steps;
}

// RAB block average drawing the block's fading internally.
inline double incident_power_rab(double theta0, const FadingParams& fading, int q, double p_watts,
                                 double delta, rng::Stream& stream) {
  if (q < 2) throw validation_error("RAB requires at least Q = 2 antenna elements");
  return incident_power_rab_block(theta0, sample_block(fading, q, stream), q, p_watts, delta);
}

// Incident RF power from independent PBs adds up.
inline double total_incident(const std::vector<double>& xi_per_pb) {
  double g = 0.0;
  for (double xi : xi_per_pb) {
    if (!(xi >= 0.0)) throw validation_error("total_incident: negative incident power");
    g += xi;
  }
  return g;
}

// Linear energy-harvesting model g(xi) = zeta * xi.
inline double harvested_power(double xi_watts, double efficiency) {
  if (!(xi_watts >= 0.0)) throw validation_error("harvested_power: xi must be >= 0");
  if (!(efficiency >= 0.0 && efficiency < 1.0))
    throw validation_error("harvested_power: efficiency must be in [0, 1)");
  return efficiency * xi_watts;
}

}  // namespace wpusn
