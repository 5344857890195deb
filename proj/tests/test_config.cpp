#include <doctest.h>

#include "strsim/config.hpp"

using namespace strsim;

TEST_CASE("empty document yields the full default configuration") {
  SimConfig cfg = parse_config("");
  CHECK(cfg.channel.tx_power_dbm == 14.0);
  CHECK(cfg.default_cst_dbm == -82.0);
  CHECK(cfg.mac.payload_bytes == 1000);
  CHECK(cfg.mac.mac_header_bits == 272);
  CHECK(cfg.mac.phy_header_bits == 128);
  CHECK(cfg.mac.data_rate_bps == 54e6);
  CHECK(cfg.n_per_cell == 15);
  CHECK(cfg.cell_radius_m == 35.0);
  CHECK(cfg.channel.sinr_threshold_db == 20.0);
  CHECK(cfg.tolerance_db == 5.0);
  CHECK(cfg.mac.cw_min == 16);
  CHECK(cfg.rings == 2);
  CHECK(cfg.lambda_eca + cfg.lambda_ca == 1.0);
  CHECK(cfg.lambda_fd + cfg.lambda_hd == 1.0);
}

TEST_CASE("lambda complements are derived") {
  SimConfig cfg = parse_config("lambda_eca = 0.5\n");
  CHECK(cfg.lambda_eca == 0.5);
  CHECK(cfg.lambda_ca == 0.5);

  cfg = parse_config("lambda_hd = 0.25\n");
  CHECK(cfg.lambda_fd == 0.75);

  cfg = parse_config("lambda_eca = 0.3\nlambda_ca = 0.7\n");
  CHECK(cfg.lambda_ca == 0.7);
}

TEST_CASE("inconsistent explicit pairs are rejected") {
  CHECK_THROWS_WITH_AS(parse_config("lambda_eca = 0.3\nlambda_ca = 0.4\n"),
                       doctest::Contains("lambda_eca"), ConfigError);
}

TEST_CASE("out-of-domain values name the key") {
  CHECK_THROWS_WITH_AS(parse_config("lambda_eca = 1.5\n"),
                       doctest::Contains("lambda_eca"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("rho = 0\n"), doctest::Contains("rho"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("rings = 5\n"), doctest::Contains("rings"),
                       ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("cw_min = 1\n"), doctest::Contains("cw_min"),
                       ConfigError);
}

TEST_CASE("unknown keys are rejected by name") {
  CHECK_THROWS_WITH_AS(parse_config("no_such_key = 3\n"),
                       doctest::Contains("no_such_key"), ConfigError);
}

TEST_CASE("malformed lines and values") {
  CHECK_THROWS_AS(parse_config("just a line without equals\n"), ConfigError);
  CHECK_THROWS_WITH_AS(parse_config("cell_radius = abc\n"),
                       doctest::Contains("cell_radius"), ConfigError);
}

TEST_CASE("comments, blanks and whitespace are tolerated") {
  SimConfig cfg = parse_config(
      "# a comment\n"
      "\n"
      "  cell_radius = 20   # trailing comment\n"
      "mode=legacy\r\n"
      "adaptation = off\n"
      "seed = 777\n");
  CHECK(cfg.cell_radius_m == 20.0);
  CHECK(cfg.mode == SimMode::Legacy);
  CHECK_FALSE(cfg.cst_adaptation);
  CHECK(cfg.seed == 777);
}

TEST_CASE("interframe space ordering is validated") {
  CHECK_THROWS_AS(parse_config("difs_us = 10\n"), ConfigError);  // below SIFS
}

TEST_CASE("missing config files are reported") {
  CHECK_THROWS_WITH_AS(load_config("/no/such/file.conf"),
                       doctest::Contains("no/such/file"), ConfigError);
}

TEST_CASE("mode and booleans parse strictly") {
  CHECK_THROWS_AS(parse_config("mode = both\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("adaptation = maybe\n"), ConfigError);
  CHECK(parse_config("mode = str\n").mode == SimMode::Str);
  CHECK(parse_config("ideal_channel = on\n").ideal_channel);
  CHECK(parse_config("ap_saturated = off\n").ap_saturated == false);
}
