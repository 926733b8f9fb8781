// Small-scale Rician fading between a PB's uniform linear array and a
// single-antenna device.
//
// Angles follow the array convention that theta = 0 is the boresight (normal)
// direction, so the LOS element phases are -t*pi*sin(theta) for element t.
// Block-fading contract: one NLOS draw per (PB, device) per transmission
// block; deterministic steering (e.g. RAB rotation) may re-evaluate the LOS
// part within the block against the same draw.
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "wpusn/common.hpp"
#include "wpusn/rng.hpp"

namespace wpusn {

using cvec = std::vector<std::complex<double>>;
using cmat = std::vector<cvec>;  // row-major square matrices only

struct UlaConfig {
  int antennas = 1;          // Q
  double orientation = 0.0;  // boresight heading in the ground plane, radians

  void validate() const {
    if (antennas < 1) throw validation_error("ula: antennas must be >= 1");
  }
};

// Lower-triangular Cholesky factor of a Hermitian positive semidefinite
// matrix. Semidefinite directions get zero columns; an indefinite input is
// rejected.
inline cmat cholesky_psd(const cmat& r) {
  const std::size_t q = r.size();
  for (const auto& row : r)
    if (row.size() != q) throw validation_error("covariance: matrix must be square");
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j <= i; ++j)
      if (std::abs(r[i][j] - std::conj(r[j][i])) > 1e-9)
        throw validation_error("covariance: matrix must be Hermitian");

  cmat l(q, cvec(q, {0.0, 0.0}));
  for (std::size_t j = 0; j < q; ++j) {
    std::complex<double> sum = r[j][j];
    for (std::size_t k = 0; k < j; ++k) sum -= l[j][k] * std::conj(l[j][k]);
    const double diag = sum.real();
    if (diag < -1e-9) throw validation_error("covariance: matrix is not positive semidefinite");
    if (diag <= 1e-12) continue;  // semidefinite direction
    l[j][j] = std::sqrt(diag);
    for (std::size_t i = j + 1; i < q; ++i) {
      std::complex<double> s = r[i][j];
      for (std::size_t k = 0; k < j; ++k) s -= l[i][k] * std::conj(l[j][k]);
      l[i][j] = s / l[j][j];
    }
  }
  return l;
}

struct FadingParams {
  double rician_k = 10.0;
  cmat nlos_chol;  // empty = identity covariance

  static FadingParams identity(double kappa) {
    if (!(kappa >= 0.0)) throw validation_error("fading: rician_k must be >= 0");
    return {kappa, {}};
  }

  static FadingParams with_covariance(double kappa, const cmat& r) {
    if (!(kappa >= 0.0)) throw validation_error("fading: rician_k must be >= 0");
    return {kappa, cholesky_psd(r)};
  }

  double los_coef() const { return std::sqrt(rician_k / (1.0 + rician_k)); }
  double nlos_coef() const { return std::sqrt(1.0 / (1.0 + rician_k)); }
};

// Azimuth of a device relative to a PB's array boresight, in [0, 2*pi).
// Coincident ground positions map to theta = 0 by convention.
inline double azimuth(double pb_x, double pb_y, double pb_orientation, double dev_x,
                      double dev_y) {
  const double dx = dev_x - pb_x;
  const double dy = dev_y - pb_y;
  if (dx == 0.0 && dy == 0.0) return 0.0;
  return wrap_angle(std::atan2(dy, dx) - pb_orientation);
}

// Deterministic LOS steering vector; entry t is exp(-i*t*pi*sin(theta)).
inline cvec los_vector(double theta, int q) {
  if (q < 1) throw validation_error("los_vector: q must be >= 1");
  cvec v(static_cast<std::size_t>(q));
  const double s = std::sin(theta);
  for (int t = 0; t < q; ++t) {
    const double phase = -static_cast<double>(t) * constants::pi * s;
    v[static_cast<std::size_t>(t)] = {std::cos(phase), std::sin(phase)};
  }
  return v;
}

// One block's scattered component: h(theta) = los_coef*los(theta) + nlos_coef*w.
struct FadingBlock {
  double los_coef;
  double nlos_coef;
  cvec w;  // CN(0, R)

  cvec realize(double theta) const {
    cvec h = los_vector(theta, static_cast<int>(w.size()));
    for (std::size_t t = 0; t < w.size(); ++t) h[t] = los_coef * h[t] + nlos_coef * w[t];
    return h;
  }
};

inline FadingBlock sample_block(const FadingParams& fading, int q, rng::Stream& stream) {
  if (q < 1) throw validation_error("sample: q must be >= 1");
  cvec g(static_cast<std::size_t>(q));
  for (auto& z : g) z = stream.next_cnormal();
  if (fading.nlos_chol.empty()) return {fading.los_coef(), fading.nlos_coef(), std::move(g)};
  if (fading.nlos_chol.size() != static_cast<std::size_t>(q))
    throw validation_error("sample: covariance dimension does not match q");
  cvec w(static_cast<std::size_t>(q), {0.0, 0.0});
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) w[i] += fading.nlos_chol[i][j] * g[j];
  return {fading.los_coef(), fading.nlos_coef(), std::move(w)};
}

// Channel realization h = sqrt(k/(1+k))*los(theta) + sqrt(1/(1+k))*w.
inline cvec sample(double theta, const FadingParams& fading, int q, rng::Stream& stream) {
  return sample_block(fading, q, stream).realize(theta);
}

}  // namespace wpusn
