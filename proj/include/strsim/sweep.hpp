#pragma once
// Scenario sweeps: one swept parameter, Monte Carlo drops per point, CSV out.

#include <string>
#include <vector>

#include "strsim/engine.hpp"
#include "strsim/metrics.hpp"

namespace strsim {

struct SweepSpec {
  std::string parameter;  // lambda_eca, lambda_fd, cell_radius, beta,
                          // tolerance, cw_min, n_per_cell, rho
  std::vector<double> values;
  int drops = 100;
};

// "name=v1,v2,..." as accepted on the command line.
SweepSpec parse_sweep_arg(std::string_view arg, int drops);

// Returns the config with the swept parameter applied; rejects unknown
// parameter names and out-of-domain values.
SimConfig apply_sweep_value(const SimConfig& base, const std::string& parameter,
                            double value);

// Seed for (point, drop), independent across sweep points yet reproducible.
uint64_t sweep_seed(uint64_t base_seed, int param_index, int drop_index);

struct SweepPoint {
  double value = 0.0;
  std::vector<DropResult> drops;
  std::vector<GainSample> gains;
};

// Runs every (value, drop) pair and writes one CSV row per pair plus a
// companion CDF file per value next to `out_path`. Row order is
// (point, drop) regardless of execution order.
std::vector<SweepPoint> run_sweep(const SweepSpec& spec, const SimConfig& base,
                                  uint64_t base_seed, const std::string& out_path,
                                  int n_threads = 0);

// Locale-independent shortest-round-trip formatting used for all CSV output.
std::string format_double(double v);

}  // namespace strsim
