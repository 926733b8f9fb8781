// Shared constants, unit conversions and error types for the WPUSN
// energy-transfer simulator.
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace wpusn {

namespace constants {
inline constexpr double pi = 3.141592653589793238462643383279502884;
inline constexpr double speed_of_light = 299792458.0;          // m/s
inline constexpr double mu0 = 1.25663706212e-6;                // H/m
inline constexpr double eps0 = 8.8541878128e-12;               // F/m
}  // namespace constants

// Domain errors. validation_error covers config/range violations so the CLI
// can fail fast before any computation starts.
class validation_error : public std::runtime_error {
 public:
  explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

class not_implemented_error : public std::runtime_error {
 public:
  explicit not_implemented_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a practical power budget cannot cover the consumption terms.
// Carries the deficit in watts so sweeps can report how far off a
// configuration is.
class insufficient_budget_error : public std::runtime_error {
 public:
  insufficient_budget_error(const std::string& what, double deficit_w)
      : std::runtime_error(what), deficit_w_(deficit_w) {}
  double deficit_w() const { return deficit_w_; }

 private:
  double deficit_w_;
};

inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }
inline double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) / 1000.0; }
inline double to_db(double linear) { return 10.0 * std::log10(linear); }
inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

// Wraps an angle to [0, 2*pi).
inline double wrap_angle(double radians) {
  double w = std::fmod(radians, 2.0 * constants::pi);
  if (w < 0.0) w += 2.0 * constants::pi;
  return w;
}

}  // namespace wpusn
