#include <catch2/catch_amalgamated.hpp>

#include "wpusn/soil.hpp"

using namespace wpusn;

TEST_CASE("dry mineral soil dielectric is small and nearly lossless") {
  const auto d = mineralogy_dielectric(0.0, 0.38, 433e6);
  REQUIRE(d.eps_real > 2.0);
  REQUIRE(d.eps_real < 6.0);
  REQUIRE(d.eps_imag < 0.2);
  // regression pins from the first verified run of the ported model
  REQUIRE_THAT(d.eps_real, Catch::Matchers::WithinRel(2.156968530212294, 1e-12));
  REQUIRE_THAT(d.eps_imag, Catch::Matchers::WithinRel(0.07102119778534399, 1e-12));
}

TEST_CASE("reference soil dielectric regression pin") {
  // vwc = 15 %, clay = 38 %, 433 MHz
  const auto d = mineralogy_dielectric(0.15, 0.38, 433e6);
  REQUIRE_THAT(d.eps_real, Catch::Matchers::WithinRel(5.876391491184564, 1e-12));
  REQUIRE_THAT(d.eps_imag, Catch::Matchers::WithinRel(1.2081266111866358, 1e-12));
}

TEST_CASE("dielectric grows with moisture") {
  double prev_r = 0.0, prev_i = 0.0;
  for (double vwc : {0.05, 0.10, 0.15, 0.20, 0.25, 0.30}) {
    const auto d = mineralogy_dielectric(vwc, 0.38, 433e6);
    REQUIRE(d.eps_real > prev_r);
    REQUIRE(d.eps_imag > prev_i);
    prev_r = d.eps_real;
    prev_i = d.eps_imag;
  }
  const auto wet = mineralogy_dielectric(0.25, 0.38, 433e6);
  const auto dry = mineralogy_dielectric(0.05, 0.38, 433e6);
  REQUIRE(wet.eps_real > dry.eps_real);
}

TEST_CASE("mineralogy model rejects out-of-band inputs") {
  REQUIRE_THROWS_AS(mineralogy_dielectric(0.15, 0.38, 100e6), validation_error);
  REQUIRE_THROWS_AS(mineralogy_dielectric(0.15, 0.38, 30e9), validation_error);
  REQUIRE_THROWS_AS(mineralogy_dielectric(0.6, 0.38, 433e6), validation_error);
  REQUIRE_THROWS_AS(mineralogy_dielectric(-0.1, 0.38, 433e6), validation_error);
  REQUIRE_THROWS_AS(mineralogy_dielectric(0.15, 1.5, 433e6), validation_error);
}

TEST_CASE("soil properties validation") {
  SoilProperties bad{0.15, 0.38, 1.0, -1.0, 0.0};
  REQUIRE_THROWS_AS(bad.validate(), validation_error);
  bad = {0.15, 0.38, 1.0, 5.0, -0.5};
  REQUIRE_THROWS_AS(bad.validate(), validation_error);
  bad = {1.5, 0.38, 1.0, 5.0, 0.5};
  REQUIRE_THROWS_AS(bad.validate(), validation_error);
}

TEST_CASE("providers: direct passes through, mineralogy overwrites") {
  SoilProperties in{0.15, 0.38, 1.0, 4.2, 0.7};
  const auto direct = resolve_soil(DielectricProvider::direct, in, 433e6);
  REQUIRE(direct.eps_real == 4.2);
  REQUIRE(direct.eps_imag == 0.7);
  const auto model = resolve_soil(DielectricProvider::mineralogy, in, 433e6);
  REQUIRE_THAT(model.eps_real, Catch::Matchers::WithinRel(5.876391491184564, 1e-12));
}
