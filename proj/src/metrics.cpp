#include "strsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace strsim {

double throughput_bps(const SimResult& result) {
  if (result.elapsed_s <= 0.0)
    throw std::domain_error("throughput undefined for zero elapsed time");
  return static_cast<double>(result.delivered_payload_bits) / result.elapsed_s;
}

GainSample str_gain(const DropResult& drop) {
  GainSample g;
  g.drop_seed = drop.seed;
  g.chi_legacy_bps = throughput_bps(drop.legacy);
  g.chi_str_bps = throughput_bps(drop.str);
  if (g.chi_legacy_bps <= 0.0)
    throw std::domain_error("STR gain undefined: legacy throughput is zero");
  g.theta = g.chi_str_bps / g.chi_legacy_bps;
  return g;
}

std::vector<std::pair<double, double>> empirical_cdf(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("empirical_cdf: no samples");
  std::sort(samples.begin(), samples.end());
  std::vector<std::pair<double, double>> cdf;
  size_t n = samples.size();
  for (size_t i = 0; i < n; ++i) {
    if (i + 1 < n && samples[i + 1] == samples[i]) continue;  // keep the last tie
    cdf.emplace_back(samples[i], static_cast<double>(i + 1) / static_cast<double>(n));
  }
  return cdf;
}

double quantile_lower(std::vector<double> samples, double q) {
  if (samples.empty()) throw std::invalid_argument("quantile of no samples");
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("quantile level outside [0,1]");
  std::sort(samples.begin(), samples.end());
  size_t n = samples.size();
  size_t rank = q <= 0.0 ? 1 : static_cast<size_t>(std::ceil(q * static_cast<double>(n)));
  rank = std::min(std::max<size_t>(rank, 1), n);
  return samples[rank - 1];
}

double ufd_opportunity_fraction(const SimResult& result) {
  if (result.predicted_primaries == 0) return 0.0;
  return static_cast<double>(result.predicted_with_created_target) /
         static_cast<double>(result.predicted_primaries);
}

}  // namespace strsim
