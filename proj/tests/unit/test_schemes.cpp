#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

#include "wpusn/channel.hpp"
#include "wpusn/schemes.hpp"

using namespace wpusn;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("scheme names round-trip case-insensitively") {
  REQUIRE(parse_scheme("sa") == SchemeKind::SA);
  REQUIRE(parse_scheme("AA_is") == SchemeKind::AA_IS);
  REQUIRE(parse_scheme("aa_ss_i") == SchemeKind::AA_SS_I);
  REQUIRE(parse_scheme("AA_SS_II") == SchemeKind::AA_SS_II);
  REQUIRE(parse_scheme("rab") == SchemeKind::RAB);
  REQUIRE(parse_scheme("full_csi") == SchemeKind::FULL_CSI);
  REQUIRE_THROWS_AS(parse_scheme("beamform"), validation_error);
}

TEST_CASE("scheme constraints") {
  REQUIRE_THROWS_AS(validate_scheme(SchemeKind::RAB, 1), validation_error);
  REQUIRE_NOTHROW(validate_scheme(SchemeKind::RAB, 2));
  REQUIRE_THROWS_AS(validate_scheme(SchemeKind::RAB, 51, 50), validation_error);
  REQUIRE_THROWS_AS(validate_scheme(SchemeKind::FULL_CSI, 4), not_implemented_error);
}

TEST_CASE("precoder structure and radiated power") {
  const int q = 6;
  const double p = 3.0;
  for (SchemeKind kind : {SchemeKind::AA_IS, SchemeKind::AA_SS_I, SchemeKind::AA_SS_II}) {
    const PrecoderSpec spec = make_precoder(kind, q, p);
    REQUIRE_THAT(spec.radiated_power(), WithinRel(p, 1e-12));
    double sum_pk = 0.0;
    for (double pk : spec.signal_power_w) {
      REQUIRE_THAT(pk, WithinRel(p / q, 1e-12));
      sum_pk += pk;
    }
    if (kind == SchemeKind::AA_IS) {
      REQUIRE(spec.signals() == static_cast<std::size_t>(q));
      REQUIRE_THAT(sum_pk, WithinRel(p, 1e-12));  // K = Q independent signals
    } else {
      REQUIRE(spec.signals() == 1);
    }
  }
  const PrecoderSpec ss2 = make_precoder(SchemeKind::AA_SS_II, 4, p);
  const double want[] = {1.0, -1.0, 1.0, -1.0};
  for (int t = 0; t < 4; ++t) REQUIRE(ss2.vectors[0][t].real() == want[t]);
  REQUIRE_THROWS_AS(make_precoder(SchemeKind::SA, q, p), validation_error);
  REQUIRE_THROWS_AS(make_precoder(SchemeKind::RAB, q, p), validation_error);
  REQUIRE_THROWS_AS(make_precoder(SchemeKind::FULL_CSI, q, p), not_implemented_error);
}

TEST_CASE("incident power basics") {
  PrecoderSpec spec;
  spec.signal_power_w = {2.0};
  spec.vectors = {cvec{{1.0, 0.0}}};
  const cvec h{{1.0, 0.0}};
  REQUIRE_THAT(incident_power(h, spec, 4.0), WithinRel(0.5, 1e-12));  // 2 * 1 / 4
  REQUIRE_THROWS_AS(incident_power(cvec(2, {1.0, 0.0}), spec, 4.0), validation_error);
  REQUIRE_THROWS_AS(incident_power(h, spec, 0.0), validation_error);
}

TEST_CASE("AA-SS-I coherent boresight combining yields Q watts") {
  for (int q : {1, 2, 4, 8}) {
    const PrecoderSpec spec = make_precoder(SchemeKind::AA_SS_I, q, 1.0);
    const cvec h = los_vector(0.0, q);  // kappa -> infinity at boresight
    REQUIRE_THAT(incident_power(h, spec, 1.0), WithinRel(static_cast<double>(q), 1e-12));
  }
}

TEST_CASE("AA-SS-II peaks offset 90 degrees from boresight") {
  const int q = 4;
  const PrecoderSpec spec = make_precoder(SchemeKind::AA_SS_II, q, 1.0);
  const cvec h = los_vector(constants::pi / 2.0, q);
  REQUIRE_THAT(incident_power(h, spec, 1.0), WithinRel(static_cast<double>(q), 1e-12));
  // and has a null at boresight for even Q
  REQUIRE_THAT(incident_power(los_vector(0.0, q), spec, 1.0), WithinAbs(0.0, 1e-12));
}

TEST_CASE("AA-SS-II pattern is AA-SS-I shifted to the endfire peak") {
  // compare the LOS gain patterns on a grid: the II pattern at theta equals
  // the I pattern at an angle whose sine differs by 1
  const int q = 4;
  const PrecoderSpec s1 = make_precoder(SchemeKind::AA_SS_I, q, 1.0);
  const PrecoderSpec s2 = make_precoder(SchemeKind::AA_SS_II, q, 1.0);
  for (int i = 0; i <= 36; ++i) {
    const double sin2 = -1.0 + 2.0 * i / 36.0;  // sine of the II-pattern angle
    const double sin1 = sin2 - 1.0;             // shift: sin theta' = sin theta - 1
    if (sin1 < -1.0) continue;
    const double th2 = std::asin(sin2);
    const double th1 = std::asin(sin1);
    const double g2 = incident_power(los_vector(th2, q), s2, 1.0);
    const double g1 = incident_power(los_vector(th1, q), s1, 1.0);
    REQUIRE_THAT(g2, WithinAbs(g1, 1e-9));
  }
}

TEST_CASE("AA-IS matches a brute-force basis sum") {
  rng::Stream s(rng::derive(41, {0}));
  for (int trial = 0; trial < 20; ++trial) {
    const int q = 1 + static_cast<int>(s.next_double(0.0, 8.0));
    const double p = s.next_double(0.1, 20.0);
    const double delta = s.next_double(0.5, 1e6);
    cvec h(q);
    for (auto& z : h) z = {s.next_gauss(), s.next_gauss()};
    const double got = incident_power(h, make_precoder(SchemeKind::AA_IS, q, p), delta);
    double brute = 0.0;
    for (int k = 0; k < q; ++k) brute += (p / q) * std::norm(h[k]);
    brute /= delta;
    REQUIRE_THAT(got, WithinRel(brute, 1e-12));
  }
}

TEST_CASE("incident power is homogeneous in transmit power") {
  rng::Stream s(rng::derive(43, {0}));
  cvec h(5);
  for (auto& z : h) z = {s.next_gauss(), s.next_gauss()};
  const double base = incident_power(h, make_precoder(SchemeKind::AA_SS_II, 5, 2.0), 7.0);
  const double scaled = incident_power(h, make_precoder(SchemeKind::AA_SS_II, 5, 6.0), 7.0);
  REQUIRE_THAT(scaled, WithinRel(3.0 * base, 1e-12));
}

TEST_CASE("SA block averaging") {
  // all-unit channels give p regardless of Q
  REQUIRE_THAT(incident_power_sa(cvec(5, {1.0, 0.0}), 1.0, 1.0), WithinRel(1.0, 1e-12));
  // arithmetic mean over subblocks
  cvec two{{0.0, 0.0}, {std::sqrt(2.0), 0.0}};
  REQUIRE_THAT(incident_power_sa(two, 1.0, 1.0), WithinRel(1.0, 1e-12));
}

TEST_CASE("SA expectation over rician fading is p/delta") {
  const auto fading = FadingParams::identity(10.0);
  const double p = 2.0, delta = 5.0;
  const int q = 4, draws = 100000;
  double acc = 0.0;
  for (int d = 0; d < draws; ++d) {
    rng::Stream s(rng::derive(47, {static_cast<std::uint64_t>(d)}));
    acc += incident_power_sa(sample(0.7, fading, q, s), p, delta);
  }
  REQUIRE_THAT(acc / draws, WithinRel(p / delta, 0.02));
}

TEST_CASE("RAB rejects a single antenna") {
  const auto fading = FadingParams::identity(10.0);
  rng::Stream s(rng::derive(53, {0}));
  REQUIRE_THROWS_AS(incident_power_rab(0.0, fading, 1, 1.0, 1.0, s), validation_error);
}

TEST_CASE("RAB two-step analytic oracle at kappa -> infinity") {
  // Q = 2, steps at theta0 + pi/2 and theta0 + pi; AA-SS-II gain with
  // v = [1, -1] is |1 - e^{-i pi sin theta}|^2 = 4 sin^2(pi sin(theta)/2)
  const auto fading = FadingParams::identity(1e12);
  const double p = 2.0, delta = 3.0;
  for (double theta0 : {0.0, 0.3, 1.2}) {
    rng::Stream s(rng::derive(59, {0}));
    const double got = incident_power_rab(theta0, fading, 2, p, delta, s);
    auto gain = [&](double th) {
      const double x = std::sin(constants::pi * std::sin(th) / 2.0);
      return 4.0 * x * x;
    };
    const double want = 0.5 * (p / 2.0) *
                        (gain(theta0 + constants::pi / 2.0) + gain(theta0 + constants::pi)) / delta;
    REQUIRE_THAT(got, WithinRel(want, 1e-4));  // kappa = 1e12 leaves ~1e-6 NLOS residue
  }
}

TEST_CASE("RAB peak step equals the rotated AA-SS-II gain") {
  // at kappa -> infinity each rotation term is exactly the AA-SS-II incident
  // power at the rotated angle
  const int q = 4;
  const double p = 1.0, delta = 2.0;
  const FadingBlock block{1.0, 0.0, cvec(q, {0.0, 0.0})};
  const PrecoderSpec ss2 = make_precoder(SchemeKind::AA_SS_II, q, p);
  double manual = 0.0;
  for (int step = 1; step <= q; ++step) {
    const double th = 0.25 + step * constants::pi / q;
    manual += incident_power(los_vector(th, q), ss2, delta);
  }
  manual /= q;
  REQUIRE_THAT(incident_power_rab_block(0.25, block, q, p, delta), WithinRel(manual, 1e-12));
}

TEST_CASE("RAB with one step degenerates to one AA-SS-II evaluation") {
  const int q = 4;
  const auto fading = FadingParams::identity(8.0);
  rng::Stream s(rng::derive(61, {0}));
  const FadingBlock block = sample_block(fading, q, s);
  const double one_step = incident_power_rab_block(0.4, block, q, 1.0, 2.0, 1);
  const PrecoderSpec ss2 = make_precoder(SchemeKind::AA_SS_II, q, 1.0);
  const double direct = incident_power(block.realize(0.4 + constants::pi), ss2, 2.0);
  REQUIRE_THAT(one_step, WithinRel(direct, 1e-12));
}

TEST_CASE("total incident sums per-PB contributions") {
  REQUIRE(total_incident({1.0}) == 1.0);
  REQUIRE_THAT(total_incident({0.5, 0.25, 0.25}), WithinRel(1.0, 1e-12));
  REQUIRE_THROWS_AS(total_incident({0.5, -0.1}), validation_error);
  // additivity over an 8-PB split
  rng::Stream s(rng::derive(67, {0}));
  std::vector<double> xs(8);
  double sum = 0.0;
  for (auto& x : xs) {
    x = s.next_double(0.0, 2.0);
    sum += x;
  }
  REQUIRE_THAT(total_incident(xs), WithinRel(sum, 1e-12));
}

TEST_CASE("linear harvesting model") {
  REQUIRE(harvested_power(3.0, 0.0) == 0.0);
  REQUIRE_THAT(harvested_power(2.0, 0.5), WithinRel(1.0, 1e-12));
  rng::Stream s(rng::derive(71, {0}));
  for (int i = 0; i < 10; ++i) {
    const double a = s.next_double(0.0, 5.0), b = s.next_double(0.0, 5.0);
    REQUIRE_THAT(harvested_power(a, 0.3) + harvested_power(b, 0.3),
                 WithinRel(harvested_power(a + b, 0.3), 1e-12));
  }
  REQUIRE_THROWS_AS(harvested_power(1.0, 1.5), validation_error);
}
