// Large-scale link attenuation between an above-ground power beacon and a
// buried device: air loss, refraction loss at the air-soil interface, and
// in-soil attenuation. All losses are dimensionless linear factors; convert
// to dB only at reporting boundaries.
#pragma once

#include <cmath>

#include "wpusn/common.hpp"
#include "wpusn/soil.hpp"

namespace wpusn {

struct RfParams {
  double frequency_hz = 433e6;
  double path_loss_exponent = 2.0;  // air segment only
  double pb_height_m = 1.5;

  void validate() const {
    if (!(frequency_hz > 0.0)) throw validation_error("rf: frequency must be > 0");
    if (!(path_loss_exponent >= 2.0))
      throw validation_error("rf: path_loss_exponent must be >= 2");
    if (!(pb_height_m > 0.0)) throw validation_error("rf: pb_height must be > 0");
  }
};

struct LinkGeometry {
  double air_distance_m;   // PB antenna to the ground point above the device
  double soil_distance_m;  // vertical in-soil path = burial depth

  // Air path from a PB at pb_height above ground to the point directly above
  // a device at the given horizontal distance.
  static LinkGeometry from_horizontal(double horizontal_m, double pb_height_m,
                                      double burial_depth_m) {
    return {std::sqrt(horizontal_m * horizontal_m + pb_height_m * pb_height_m), burial_depth_m};
  }

  void validate() const {
    if (!(air_distance_m > 0.0)) throw validation_error("link: air_distance must be > 0");
    if (!(soil_distance_m > 0.0)) throw validation_error("link: soil_distance must be > 0");
  }
};

struct SoilConstants {
  double alpha_np_per_m;  // attenuation constant
  double beta_rad_per_m;  // phase-shifting constant
};

// Attenuation and phase constants of a lossy soil. beta >= alpha always;
// alpha = 0 exactly when eps_imag = 0.
inline SoilConstants attenuation_constants(const SoilProperties& soil, const RfParams& rf) {
  if (!(soil.eps_real > 0.0))
    throw validation_error("attenuation_constants: eps_real must be > 0");
  const double loss_tan = soil.eps_imag / soil.eps_real;
  const double root = std::sqrt(1.0 + loss_tan * loss_tan);
  const double common =
      soil.mu_r * constants::mu0 * soil.eps_real * constants::eps0 / 2.0;
  const double w = 2.0 * constants::pi * rf.frequency_hz;
  return {w * std::sqrt(common * (root - 1.0)), w * std::sqrt(common * (root + 1.0))};
}

// (4*pi*f/c)^2 * l^tau
inline double air_loss(const LinkGeometry& geom, const RfParams& rf) {
  geom.validate();
  const double k = 4.0 * constants::pi * rf.frequency_hz / constants::speed_of_light;
  return k * k * std::pow(geom.air_distance_m, rf.path_loss_exponent);
}

// ((sqrt((sqrt(eps'^2+eps''^2)+eps')/2) + 1) / 4)^2 -- the (n+1)/4 law with n
// the soil refractive index. Equals 1 exactly at eps' = 9, eps'' = 0.
inline double refraction_loss(const SoilProperties& soil) {
  const double mag = std::sqrt(soil.eps_real * soil.eps_real + soil.eps_imag * soil.eps_imag);
  const double n = std::sqrt((mag + soil.eps_real) / 2.0);
  const double f = (n + 1.0) / 4.0;
  return f * f;
}

// (2*beta*d / e^{-alpha d})^2
inline double soil_loss(const LinkGeometry& geom, double alpha_np_per_m, double beta_rad_per_m) {
  const double d = geom.soil_distance_m;
  const double amp = 2.0 * beta_rad_per_m * d * std::exp(alpha_np_per_m * d);
  return amp * amp;
}

// Product of the three components.
inline double total_path_loss(const LinkGeometry& geom, const SoilProperties& soil,
                              const RfParams& rf) {
  const SoilConstants sc = attenuation_constants(soil, rf);
  return air_loss(geom, rf) * refraction_loss(soil) *
         soil_loss(geom, sc.alpha_np_per_m, sc.beta_rad_per_m);
}

}  // namespace wpusn
