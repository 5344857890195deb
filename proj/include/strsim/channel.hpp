#pragma once
// Link-level model: log-distance path loss, Rayleigh block fading, residual
// self-interference and SINR-based reception.

#include <limits>
#include <optional>
#include <vector>

#include "strsim/rng.hpp"

namespace strsim {

constexpr double kErasedDbm = -std::numeric_limits<double>::infinity();

// Distance law: dual-slope log-distance profile (a breakpoint of 1 m turns
// it into the plain single-slope model). On top of it, two link-class
// losses shape the deployment: paths between stations are obstructed
// (floor-level devices), paths crossing cells pass room boundaries. Links
// to or from an AP inside one cell ride the bare distance law.
struct ChannelParams {
  double tx_power_dbm = 14.0;
  double pathloss_ref_db = 46.4;    // at 1 m (5 GHz free-space anchor)
  double pathloss_exp = 2.0;        // slope beyond the breakpoint
  double pathloss_near_exp = 2.0;   // slope inside the breakpoint
  double pathloss_break_m = 1.0;
  double sta_obstruction_db = 18.0; // extra loss on STA-to-STA links
  double intercell_wall_db = 25.0;  // extra loss on links crossing cells
  double noise_floor_dbm = -95.0;
  double sinr_threshold_db = 20.0;  // beta
  double sic_capability_db = 110.0;
  double rho = 1.0;                 // cancellation effectiveness, (0,1]
};

inline double dbm_to_mw(double dbm) {
  return dbm == kErasedDbm ? 0.0 : std::pow(10.0, dbm / 10.0);
}

inline double mw_to_dbm(double mw) {
  return mw <= 0.0 ? kErasedDbm : 10.0 * std::log10(mw);
}

// Rayleigh-amplitude fading: exponentially distributed power gain, unit mean.
struct FadingSample {
  double gain = 1.0;
};

inline FadingSample draw_fading(Stream& rng) { return FadingSample{rng.exp1()}; }

double path_loss_db(const ChannelParams& p, double distance_m);

double rssi_dbm(const ChannelParams& p, double distance_m,
                FadingSample fading = FadingSample{}, double extra_loss_db = 0.0);

double residual_self_interference_dbm(const ChannelParams& p);

// signal - 10*log10(sum of interferers + noise + rsi), all in linear domain.
// rsi participates only when the receiver is itself transmitting.
double sinr_db(double signal_dbm, const std::vector<double>& interferer_dbm,
               double noise_dbm, std::optional<double> rsi_dbm = std::nullopt);

inline bool reception_success(double sinr, double beta) { return sinr >= beta; }

}  // namespace strsim
