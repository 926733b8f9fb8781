#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "wpusn/channel.hpp"

using namespace wpusn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("azimuth geometry") {
  // device on the boresight of an unrotated array
  REQUIRE(azimuth(0, 0, 0.0, 3.0, 0.0) == 0.0);
  // planar oracle: device at (1,1) from the origin
  REQUIRE_THAT(azimuth(0, 0, 0.0, 1.0, 1.0), WithinRel(constants::pi / 4.0, 1e-12));
  // rotating the PB by pi shifts theta by pi (mod 2pi)
  const double base = azimuth(0, 0, 0.3, 1.0, 1.0);
  const double rotated = azimuth(0, 0, 0.3 + constants::pi, 1.0, 1.0);
  REQUIRE_THAT(wrap_angle(rotated + constants::pi), WithinAbs(base, 1e-12));
  // coincident ground positions use the documented theta = 0 convention
  REQUIRE(azimuth(2.0, -1.0, 0.7, 2.0, -1.0) == 0.0);
  // range
  for (double o : {-5.0, 0.0, 1.0, 9.0}) {
    const double th = azimuth(0, 0, o, -2.0, 0.5);
    REQUIRE(th >= 0.0);
    REQUIRE(th < 2.0 * constants::pi);
  }
}

TEST_CASE("los vector phases") {
  SECTION("boresight gives all ones") {
    const cvec v = los_vector(0.0, 5);
    for (const auto& z : v) {
      REQUIRE_THAT(z.real(), WithinAbs(1.0, 1e-15));
      REQUIRE_THAT(z.imag(), WithinAbs(0.0, 1e-15));
    }
  }
  SECTION("endfire alternates sign") {
    const cvec v = los_vector(constants::pi / 2.0, 4);
    const double want[] = {1.0, -1.0, 1.0, -1.0};
    for (int t = 0; t < 4; ++t) {
      REQUIRE_THAT(v[t].real(), WithinAbs(want[t], 1e-12));
      REQUIRE_THAT(v[t].imag(), WithinAbs(0.0, 1e-12));
    }
  }
  SECTION("theta = pi/6 second element is -i") {
    const cvec v = los_vector(constants::pi / 6.0, 2);
    REQUIRE_THAT(v[1].real(), WithinAbs(0.0, 1e-12));
    REQUIRE_THAT(v[1].imag(), WithinAbs(-1.0, 1e-12));
  }
  SECTION("phases are linear in the element index") {
    const double theta = 0.7231;
    const cvec v = los_vector(theta, 8);
    const double step = -constants::pi * std::sin(theta);
    for (int t = 0; t < 8; ++t) {
      REQUIRE_THAT(v[t].real(), WithinAbs(std::cos(step * t), 1e-12));
      REQUIRE_THAT(v[t].imag(), WithinAbs(std::sin(step * t), 1e-12));
    }
  }
}

TEST_CASE("sampling is deterministic given the stream key") {
  const auto fading = FadingParams::identity(10.0);
  rng::Stream a(rng::derive(5, {1}));
  rng::Stream b(rng::derive(5, {1}));
  const cvec ha = sample(0.4, fading, 6, a);
  const cvec hb = sample(0.4, fading, 6, b);
  for (int t = 0; t < 6; ++t) REQUIRE(ha[t] == hb[t]);
}

TEST_CASE("huge rician factor collapses onto the LOS vector") {
  const auto fading = FadingParams::identity(1e12);
  rng::Stream s(rng::derive(5, {2}));
  const double theta = 1.1;
  const cvec h = sample(theta, fading, 4, s);
  const cvec los = los_vector(theta, 4);
  for (int t = 0; t < 4; ++t) REQUIRE(std::abs(h[t] - los[t]) < 1e-6);
}

TEST_CASE("rayleigh per-entry second moment is unity") {
  const auto fading = FadingParams::identity(0.0);
  double acc = 0.0;
  const int draws = 100000;
  const int q = 2;
  for (int d = 0; d < draws; ++d) {
    rng::Stream s(rng::derive(17, {static_cast<std::uint64_t>(d)}));
    const cvec h = sample(0.0, fading, q, s);
    for (const auto& z : h) acc += std::norm(z);
  }
  REQUIRE_THAT(acc / (draws * q), WithinRel(1.0, 0.02));
}

TEST_CASE("norm expectation equals Q for any rician factor") {
  for (double kappa : {0.0, 1.0, 10.0}) {
    const auto fading = FadingParams::identity(kappa);
    const int q = 4, draws = 100000;
    double acc = 0.0;
    for (int d = 0; d < draws; ++d) {
      rng::Stream s(rng::derive(23, {static_cast<std::uint64_t>(d), 0}));
      for (const auto& z : sample(0.9, fading, q, s)) acc += std::norm(z);
    }
    REQUIRE_THAT(acc / draws, WithinRel(static_cast<double>(q), 0.02));
  }
}

TEST_CASE("mean matches the scaled LOS component") {
  const double kappa = 10.0;
  const auto fading = FadingParams::identity(kappa);
  const double theta = 0.6;
  const int q = 4, draws = 100000;
  cvec mean(q, {0.0, 0.0});
  for (int d = 0; d < draws; ++d) {
    rng::Stream s(rng::derive(29, {static_cast<std::uint64_t>(d)}));
    const cvec h = sample(theta, fading, q, s);
    for (int t = 0; t < q; ++t) mean[t] += h[t];
  }
  const cvec los = los_vector(theta, q);
  const double scale = std::sqrt(kappa / (1.0 + kappa));
  for (int t = 0; t < q; ++t) {
    REQUIRE_THAT(mean[t].real() / draws, WithinAbs(scale * los[t].real(), 0.02));
    REQUIRE_THAT(mean[t].imag() / draws, WithinAbs(scale * los[t].imag(), 0.02));
  }
}

TEST_CASE("covariance shaping through the cholesky factor") {
  // exponential correlation rho = 0.6, Q = 3
  const double rho = 0.6;
  cmat r(3, cvec(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = {std::pow(rho, std::abs(i - j)), 0.0};
  const auto fading = FadingParams::with_covariance(0.0, r);
  const int draws = 200000;
  std::complex<double> c01{0.0, 0.0};
  double p0 = 0.0;
  for (int d = 0; d < draws; ++d) {
    rng::Stream s(rng::derive(31, {static_cast<std::uint64_t>(d)}));
    const cvec h = sample(0.0, fading, 3, s);
    c01 += h[0] * std::conj(h[1]);
    p0 += std::norm(h[0]);
  }
  REQUIRE_THAT(p0 / draws, WithinRel(1.0, 0.02));
  REQUIRE_THAT(c01.real() / draws, WithinAbs(rho, 0.02));
  REQUIRE_THAT(c01.imag() / draws, WithinAbs(0.0, 0.02));
}

TEST_CASE("non-PSD covariance is rejected at construction") {
  cmat bad(2, cvec(2));
  bad[0][0] = {1.0, 0.0};
  bad[1][1] = {1.0, 0.0};
  bad[0][1] = {2.0, 0.0};  // |corr| > 1
  bad[1][0] = {2.0, 0.0};
  REQUIRE_THROWS_AS(FadingParams::with_covariance(1.0, bad), validation_error);

  cmat nonherm(2, cvec(2));
  nonherm[0][0] = {1.0, 0.0};
  nonherm[1][1] = {1.0, 0.0};
  nonherm[0][1] = {0.5, 0.0};
  nonherm[1][0] = {0.1, 0.0};
  REQUIRE_THROWS_AS(FadingParams::with_covariance(1.0, nonherm), validation_error);
}

TEST_CASE("rank-deficient PSD covariance is accepted") {
  // all-ones matrix: rank one, fully correlated elements
  cmat ones(3, cvec(3, {1.0, 0.0}));
  const auto fading = FadingParams::with_covariance(0.0, ones);
  rng::Stream s(rng::derive(37, {0}));
  const cvec h = sample(0.0, fading, 3, s);
  REQUIRE(std::abs(h[0] - h[1]) < 1e-12);
  REQUIRE(std::abs(h[0] - h[2]) < 1e-12);
}
