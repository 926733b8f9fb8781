// Soil electromagnetic properties and dielectric providers.
//
// Two ways to obtain the complex relative permittivity:
//   * direct      — (eps_real, eps_imag) taken verbatim from configuration;
//                   the reference path for deterministic tests.
//   * mineralogy  — the mineralogy-based soil dielectric model of
//                   Mironov, Kosolapova & Fomin (IEEE TGRS 47(7), 2009),
//                   driven by volumetric water content, clay mass fraction
//                   and frequency. Regression coefficients are the published
//                   ones at the model's laboratory calibration temperature;
//                   the model itself has no temperature or bulk-density
//                   input (see README for the documented defaults).
#pragma once

#include <cmath>
#include <string>

#include "wpusn/common.hpp"

namespace wpusn {

struct SoilProperties {
  double vwc = 0.0;       // volumetric water content, fraction of volume
  double clay = 0.0;      // clay mass fraction
  double mu_r = 1.0;      // relative permeability (non-magnetic soil)
  double eps_real = 1.0;  // eps'
  double eps_imag = 0.0;  // eps''

  void validate() const {
    if (!(eps_real > 0.0)) throw validation_error("soil: eps_real must be > 0");
    if (!(eps_imag >= 0.0)) throw validation_error("soil: eps_imag must be >= 0");
    if (!(mu_r > 0.0)) throw validation_error("soil: mu_r must be > 0");
    if (!(vwc >= 0.0 && vwc <= 1.0)) throw validation_error("soil: vwc must be in [0, 1]");
    if (!(clay >= 0.0 && clay <= 1.0)) throw validation_error("soil: clay must be in [0, 1]");
  }
};

struct Dielectric {
  double eps_real;
  double eps_imag;
};

// Mironov et al. 2009 mineralogy-based model. Valid over the model's fitted
// band (0.3-26.5 GHz) and moisture range up to 0.5 cm3/cm3.
inline Dielectric mineralogy_dielectric(double vwc, double clay, double frequency_hz) {
  if (!(frequency_hz >= 0.3e9 && frequency_hz <= 26.5e9))
    throw validation_error("mineralogy dielectric: frequency " + std::to_string(frequency_hz) +
                           " Hz outside the model band [0.3e9, 26.5e9]");
  if (!(vwc >= 0.0 && vwc <= 0.5))
    throw validation_error("mineralogy dielectric: vwc " + std::to_string(vwc) +
                           " outside the calibrated range [0, 0.5]");
  if (!(clay >= 0.0 && clay <= 1.0))
    throw validation_error("mineralogy dielectric: clay fraction must be in [0, 1]");

  const double c = clay * 100.0;  // regressions use clay percent
  const double n_dry = 1.634 - 0.539e-2 * c + 0.2748e-4 * c * c;
  const double k_dry = 0.03952 - 0.04038e-2 * c;
  const double mv_bound = 0.02863 + 0.30673e-2 * c;  // max bound-water fraction
  const double eps0_bound = 79.8 - 85.4e-2 * c + 32.7e-4 * c * c;
  const double tau_bound = 1.062e-11 + 3.450e-12 * 1e-2 * c;
  const double sigma_bound = 0.3112 + 0.467e-2 * c;
  const double sigma_free = 0.3631 + 1.217e-2 * c;
  const double eps0_free = 100.0;
  const double tau_free = 8.5e-12;
  const double eps_inf = 4.9;

  const double w = 2.0 * constants::pi * frequency_hz;

  // Debye spectrum of a water component -> refractive index n, attenuation k.
  auto water_nk = [&](double eps0w, double tau, double sigma, double& n, double& k) {
    const double cx = (eps0w - eps_inf) / (1.0 + (w * tau) * (w * tau));
    const double er = eps_inf + cx;
    const double ei = cx * w * tau + sigma / (w * constants::eps0);
    const double mag = std::sqrt(er * er + ei * ei);
    n = std::sqrt((mag + er) / 2.0);
    k = std::sqrt((mag - er) / 2.0);
  };
  double n_b, k_b, n_u, k_u;
  water_nk(eps0_bound, tau_bound, sigma_bound, n_b, k_b);
  water_nk(eps0_free, tau_free, sigma_free, n_u, k_u);

  // Refractive mixing across dry soil, bound water and free water.
  double n_m, k_m;
  if (vwc <= mv_bound) {
    n_m = n_dry + (n_b - 1.0) * vwc;
    k_m = k_dry + k_b * vwc;
  } else {
    n_m = n_dry + (n_b - 1.0) * mv_bound + (n_u - 1.0) * (vwc - mv_bound);
    k_m = k_dry + k_b * mv_bound + k_u * (vwc - mv_bound);
  }
  return {n_m * n_m - k_m * k_m, 2.0 * n_m * k_m};
}

// Resolves soil properties through the selected provider.
enum class DielectricProvider { direct, mineralogy };

inline SoilProperties resolve_soil(DielectricProvider provider, const SoilProperties& in,
                                   double frequency_hz) {
  SoilProperties out = in;
  if (provider == DielectricProvider::mineralogy) {
    const Dielectric d = mineralogy_dielectric(in.vwc, in.clay, frequency_hz);
    out.eps_real = d.eps_real;
    out.eps_imag = d.eps_imag;
  }
  out.validate();
  return out;
}

}  // namespace wpusn
