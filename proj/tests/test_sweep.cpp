#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "strsim/sweep.hpp"

using namespace strsim;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SimConfig tiny_config() {
  SimConfig cfg;
  cfg.rings = 0;
  cfg.n_per_cell = 3;
  cfg.sim_duration_s = 0.05;
  return cfg;
}

}  // namespace

TEST_CASE("sweep argument parsing") {
  SweepSpec spec = parse_sweep_arg("lambda_eca=0.5,0.75,1.0", 200);
  CHECK(spec.parameter == "lambda_eca");
  REQUIRE(spec.values.size() == 3);
  CHECK(spec.values[1] == 0.75);
  CHECK(spec.drops == 200);

  CHECK_THROWS_AS(parse_sweep_arg("lambda_eca", 10), ConfigError);
  CHECK_THROWS_AS(parse_sweep_arg("lambda_eca=", 10), ConfigError);
  CHECK_THROWS_AS(parse_sweep_arg("lambda_eca=a,b", 10), ConfigError);
  CHECK_THROWS_AS(parse_sweep_arg("lambda_eca=0.5", 0), ConfigError);
}

TEST_CASE("sweep values apply with domain checks") {
  SimConfig base = tiny_config();
  SimConfig swept = apply_sweep_value(base, "lambda_eca", 0.5);
  CHECK(swept.lambda_eca == 0.5);
  CHECK(swept.lambda_ca == 0.5);

  swept = apply_sweep_value(base, "cell_radius", 20.0);
  CHECK(swept.cell_radius_m == 20.0);
  swept = apply_sweep_value(base, "cw_min", 32);
  CHECK(swept.mac.cw_min == 32);
  swept = apply_sweep_value(base, "rho", 0.6);
  CHECK(swept.channel.rho == 0.6);

  CHECK_THROWS_AS(apply_sweep_value(base, "lambda_eca", 1.5), ConfigError);
  CHECK_THROWS_AS(apply_sweep_value(base, "nope", 1.0), ConfigError);
}

TEST_CASE("sweep writes one row per (value, drop) plus CDF companions") {
  SimConfig base = tiny_config();
  SweepSpec spec;
  spec.parameter = "lambda_eca";
  spec.values = {0.5, 1.0};
  spec.drops = 3;

  std::string out = "sweep_test_out.csv";
  auto points = run_sweep(spec, base, 5, out, 2);
  REQUIRE(points.size() == 2);
  CHECK(points[0].gains.size() == 3);

  std::string text = slurp(out);
  size_t rows = std::count(text.begin(), text.end(), '\n');
  CHECK(rows == 1 + 6);  // header + 2 values * 3 drops
  CHECK(text.rfind("parameter,value,seed,theta,chi_str,chi_l,bfd_count,"
                   "ufd_natural,ufd_created,opportunity_fraction\n",
                   0) == 0);

  std::string cdf = slurp("sweep_test_out.cdf.lambda_eca.0p5.csv");
  CHECK(cdf.rfind("theta,cdf\n", 0) == 0);

  std::remove(out.c_str());
  std::remove("sweep_test_out.cdf.lambda_eca.0p5.csv");
  std::remove("sweep_test_out.cdf.lambda_eca.1.csv");
}

TEST_CASE("rerunning a sweep is byte-identical") {
  SimConfig base = tiny_config();
  SweepSpec spec;
  spec.parameter = "beta";
  spec.values = {15.0, 20.0};
  spec.drops = 2;

  run_sweep(spec, base, 9, "sweep_a.csv", 1);
  run_sweep(spec, base, 9, "sweep_b.csv", 3);
  CHECK(slurp("sweep_a.csv") == slurp("sweep_b.csv"));
  CHECK(slurp("sweep_a.cdf.beta.15.csv") == slurp("sweep_b.cdf.beta.15.csv"));

  for (const char* f : {"sweep_a.csv", "sweep_b.csv", "sweep_a.cdf.beta.15.csv",
                        "sweep_b.cdf.beta.15.csv", "sweep_a.cdf.beta.20.csv",
                        "sweep_b.cdf.beta.20.csv"})
    std::remove(f);
}

TEST_CASE("per-point seeds are decorrelated but reproducible") {
  CHECK(sweep_seed(1, 0, 0) == sweep_seed(1, 0, 0));
  CHECK(sweep_seed(1, 0, 0) != sweep_seed(1, 0, 1));
  CHECK(sweep_seed(1, 0, 0) != sweep_seed(1, 1, 0));
  CHECK(sweep_seed(1, 0, 0) != sweep_seed(2, 0, 0));
}

TEST_CASE("format_double round-trips shortest representations") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.75) == "0.75");
  CHECK(std::stod(format_double(1.9822134)) == 1.9822134);
}
