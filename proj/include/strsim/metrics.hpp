#pragma once
// Throughput, STR gain, empirical CDFs and opportunity statistics.

#include <cstdint>
#include <utility>
#include <vector>

#include "strsim/engine.hpp"

namespace strsim {

struct GainSample {
  double theta = 0.0;
  double chi_str_bps = 0.0;
  double chi_legacy_bps = 0.0;
  uint64_t drop_seed = 0;
};

// Delivered payload bits per virtual second; headers and ACKs excluded.
double throughput_bps(const SimResult& result);

GainSample str_gain(const DropResult& drop);

// Right-continuous step function over sorted sample values; the cumulative
// fraction reaches 1 at the maximum sample.
std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples);

// Lower empirical quantile (no interpolation), q in [0,1].
double quantile_lower(std::vector<double> samples, double q);

// Fraction of predicted primary transmissions that had at least one
// created-eligible secondary target.
double ufd_opportunity_fraction(const SimResult& result);

}  // namespace strsim
