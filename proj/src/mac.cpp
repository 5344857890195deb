#include "strsim/mac.hpp"

#include <stdexcept>

namespace strsim {

int random_backoff(const BackoffState& state, const MacParams& params, Stream& rng) {
  if (state.stage > params.max_backoff_stage)
    throw std::logic_error("backoff stage exceeds maximum");
  uint64_t window = static_cast<uint64_t>(params.cw_min) << state.stage;
  return static_cast<int>(rng.below(window));
}

int deterministic_backoff(const MacParams& params) {
  if (params.cw_min < 2) throw std::invalid_argument("cw_min must be >= 2");
  return (params.cw_min + 1) / 2 - 1;
}

BackoffState on_outcome(BackoffState state, TxOutcome outcome,
                        const MacParams& params, Stream& rng) {
  state.last_outcome = outcome;
  if (outcome == TxOutcome::Success) {
    state.stage = 0;
    state.counter = state.mode == MacMode::ECA ? deterministic_backoff(params)
                                               : random_backoff(state, params, rng);
  } else {
    state.stage = std::min(state.stage + 1, params.max_backoff_stage);
    state.counter = random_backoff(state, params, rng);
  }
  return state;
}

double frame_airtime(int payload_bits, const MacParams& params) {
  if (payload_bits < 0) throw std::invalid_argument("negative payload");
  return params.phy_header_bits / params.basic_rate_bps +
         (params.mac_header_bits + payload_bits) / params.data_rate_bps;
}

double ack_airtime(const MacParams& params) {
  return (params.phy_header_bits + params.ack_bits) / params.basic_rate_bps;
}

double ack_timeout(double t_data_s, const MacParams& params) {
  return t_data_s + params.sifs_s + ack_airtime(params);
}

}  // namespace strsim
