#include "strsim/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace strsim {

double path_loss_db(const ChannelParams& p, double distance_m) {
  if (!(distance_m > 0.0))
    throw std::domain_error("path_loss_db: distance must be positive");
  double d = std::max(distance_m, 1.0);  // clamp below the 1 m reference
  double bp = std::max(p.pathloss_break_m, 1.0);
  double near = std::min(d, bp);
  double pl = p.pathloss_ref_db + 10.0 * p.pathloss_near_exp * std::log10(near);
  if (d > bp) pl += 10.0 * p.pathloss_exp * std::log10(d / bp);
  return pl;
}

double rssi_dbm(const ChannelParams& p, double distance_m, FadingSample fading,
                double extra_loss_db) {
  if (fading.gain < 0.0) throw std::domain_error("rssi_dbm: negative fading gain");
  if (fading.gain == 0.0) return kErasedDbm;
  return p.tx_power_dbm - path_loss_db(p, distance_m) - extra_loss_db +
         10.0 * std::log10(fading.gain);
}

double residual_self_interference_dbm(const ChannelParams& p) {
  if (!(p.rho > 0.0) || p.rho > 1.0)
    throw std::invalid_argument("rho must lie in (0,1]");
  if (!(p.sic_capability_db > 0.0))
    throw std::invalid_argument("sic_capability must be positive");
  return p.tx_power_dbm - p.rho * p.sic_capability_db;
}

double sinr_db(double signal_dbm, const std::vector<double>& interferer_dbm,
               double noise_dbm, std::optional<double> rsi_dbm) {
  double denom_mw = dbm_to_mw(noise_dbm);
  for (double i : interferer_dbm) denom_mw += dbm_to_mw(i);
  if (rsi_dbm) denom_mw += dbm_to_mw(*rsi_dbm);
  if (denom_mw <= 0.0)
    return std::numeric_limits<double>::infinity();  // interference-free, no noise
  return signal_dbm - 10.0 * std::log10(denom_mw);
}

}  // namespace strsim
