#include <catch2/catch_amalgamated.hpp>

#include "wpusn/config.hpp"
#include "wpusn/io.hpp"

using namespace wpusn;
using Catch::Matchers::WithinRel;

TEST_CASE("csv quoting follows RFC 4180") {
  REQUIRE(io::csv_escape("plain") == "plain");
  REQUIRE(io::csv_escape("a,b") == "\"a,b\"");
  REQUIRE(io::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  REQUIRE(io::csv_escape("line\nbreak") == "\"line\nbreak\"");
  REQUIRE(io::csv_row({"a", "b,c"}) == "a,\"b,c\"\r\n");
}

TEST_CASE("dbm conversions round-trip") {
  for (double w : {1e-9, 6.3e-6, 1.0, 42.0}) {
    REQUIRE_THAT(dbm_to_watts(watts_to_dbm(w)), WithinRel(w, 1e-12));
  }
  REQUIRE(watts_to_dbm(1e-3) == 0.0);
  REQUIRE_THAT(dbm_to_watts(-22.0), WithinRel(6.309573444801929e-06, 1e-12));
}

TEST_CASE("double formatting is stable and loss-free") {
  REQUIRE(io::fmt_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  const double v = 1.2081266111866358;
  REQUIRE(std::stod(io::fmt_double(v)) == v);
}

TEST_CASE("csv preamble carries seed and config hash") {
  const Scenario s = parse_config("", {"seed=77"});
  const std::string pre = csv_preamble(s);
  REQUIRE(pre.rfind("# seed=77 config_hash=", 0) == 0);
  REQUIRE(pre.find(config_hash(s)) != std::string::npos);
  REQUIRE(pre.substr(pre.size() - 2) == "\r\n");
}

TEST_CASE("config hash tracks scenario content") {
  const Scenario a = parse_config("");
  Scenario b = a;
  REQUIRE(config_hash(a) == config_hash(b));
  b.seed = 2;
  REQUIRE(config_hash(a) != config_hash(b));
  Scenario c = a;
  c.soil.vwc = 0.16;
  REQUIRE(config_hash(a) != config_hash(c));
}

TEST_CASE("scenario echo serializes every section with stable keys") {
  const Scenario s = parse_config("");
  const json j = scenario_to_json(s);
  REQUIRE(j.contains("area"));
  REQUIRE(j.contains("soil"));
  REQUIRE(j["soil"].contains("eps_real"));  // resolved dielectric echoed
  REQUIRE(j.contains("rf"));
  REQUIRE(j.contains("pbs"));
  REQUIRE(j.contains("power"));
  REQUIRE(j["power"]["motor"]["duty_cycle_s"] == 20e-3);
  REQUIRE(j["eh_threshold_dbm"] == -22.0);
  REQUIRE(scenario_to_json(s).dump() == j.dump());
}
