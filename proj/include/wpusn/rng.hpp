// Counter-based random number streams.
//
// Every random quantity in the simulator is drawn from a Stream whose state
// is derived by hashing (seed, purpose tag, indices...). Work units therefore
// own independent generators: results do not depend on evaluation order or
// thread count, and adding devices/draws/PBs to a scenario does not perturb
// the streams of existing ones.
#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>

namespace wpusn::rng {

// splitmix64 finalizer (Steele et al.), also used as the stream hash.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

// Derives a stream key from a seed and a path of indices. Collisions across
// distinct paths are as unlikely as 64-bit hash collisions get.
constexpr std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed + kGamma);
  for (std::uint64_t v : path) h = mix64(h ^ (v + kGamma));
  return h;
}

class Stream {
 public:
  explicit Stream(std::uint64_t key) : state_(key) {}

  std::uint64_t next_u64() {
    state_ += kGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double next_double(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // Standard normal via Box-Muller; generated in pairs.
  double next_gauss() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - next_double();  // (0, 1]
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  // Circularly-symmetric complex normal with E|z|^2 = 1.
  std::complex<double> next_cnormal() {
    double u1 = 1.0 - next_double();
    double u2 = next_double();
    double r = std::sqrt(-std::log(u1));  // sqrt(-2 ln u / 2)
    double a = 2.0 * 3.141592653589793238462643383279502884 * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Purpose tags keeping unrelated streams apart.
namespace tag {
inline constexpr std::uint64_t devices = 0x01;
inline constexpr std::uint64_t fading = 0x02;
inline constexpr std::uint64_t orientation = 0x03;
inline constexpr std::uint64_t kmeans = 0x04;
inline constexpr std::uint64_t heatmap = 0x05;
}  // namespace tag

}  // namespace wpusn::rng
