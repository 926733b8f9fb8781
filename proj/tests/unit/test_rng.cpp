#include <catch2/catch_amalgamated.hpp>

#include "wpusn/rng.hpp"

using namespace wpusn;

TEST_CASE("streams are deterministic and path-separated") {
  rng::Stream a(rng::derive(42, {1, 2, 3}));
  rng::Stream b(rng::derive(42, {1, 2, 3}));
  rng::Stream c(rng::derive(42, {1, 2, 4}));
  for (int i = 0; i < 100; ++i) {
    const auto va = a.next_u64();
    REQUIRE(va == b.next_u64());
    REQUIRE(va != c.next_u64());
  }
}

TEST_CASE("derive is sensitive to every path component") {
  REQUIRE(rng::derive(1, {0}) != rng::derive(2, {0}));
  REQUIRE(rng::derive(1, {0, 1}) != rng::derive(1, {1, 0}));
  REQUIRE(rng::derive(1, {}) != rng::derive(1, {0}));
}

TEST_CASE("uniform doubles live in [0,1) with the right mean") {
  rng::Stream s(rng::derive(7, {0}));
  double sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = s.next_double();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  REQUIRE_THAT(sum / n, Catch::Matchers::WithinAbs(0.5, 0.005));
}

TEST_CASE("gaussian moments") {
  rng::Stream s(rng::derive(9, {1}));
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double g = s.next_gauss();
    sum += g;
    sq += g * g;
  }
  REQUIRE_THAT(sum / n, Catch::Matchers::WithinAbs(0.0, 0.01));
  REQUIRE_THAT(sq / n, Catch::Matchers::WithinAbs(1.0, 0.02));
}

TEST_CASE("complex normal has unit power split across parts") {
  rng::Stream s(rng::derive(11, {2}));
  double p = 0.0, re = 0.0, im = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const auto z = s.next_cnormal();
    p += std::norm(z);
    re += z.real();
    im += z.imag();
  }
  REQUIRE_THAT(p / n, Catch::Matchers::WithinAbs(1.0, 0.02));
  REQUIRE_THAT(re / n, Catch::Matchers::WithinAbs(0.0, 0.01));
  REQUIRE_THAT(im / n, Catch::Matchers::WithinAbs(0.0, 0.01));
}
