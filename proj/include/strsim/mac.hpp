#pragma once
// DCF contention state and frame timing arithmetic.
//
// Two backoff disciplines share one state machine: legacy CSMA/CA draws a
// random backoff after every transmission, CSMA/ECA switches to the
// deterministic backoff ceil(CWmin/2)-1 after successful ones, which is what
// lets successful contenders settle into a collision-free schedule.

#include <cstdint>

#include "strsim/rng.hpp"

namespace strsim {

struct MacParams {
  int cw_min = 16;            // slots
  int max_backoff_stage = 5;  // m
  double slot_time_s = 9e-6;
  double sifs_s = 16e-6;
  double difs_s = 34e-6;
  int phy_header_bits = 128;
  int mac_header_bits = 272;
  int ack_bits = 112;
  int payload_bytes = 1000;
  double data_rate_bps = 54e6;
  double basic_rate_bps = 6e6;  // PHY header and ACKs
};

enum class MacMode : uint8_t { CA, ECA };
enum class TxOutcome : uint8_t { None, Success, Collision };

struct BackoffState {
  int stage = 0;    // k
  int counter = 0;  // remaining idle slots before transmitting
  MacMode mode = MacMode::CA;
  TxOutcome last_outcome = TxOutcome::None;
};

// Uniform over [0, 2^k * cw_min - 1].
int random_backoff(const BackoffState& state, const MacParams& params, Stream& rng);

// ceil(cw_min/2) - 1, the post-success backoff of CSMA/ECA.
int deterministic_backoff(const MacParams& params);

// State transition after the node transmitted and learned the outcome.
BackoffState on_outcome(BackoffState state, TxOutcome outcome,
                        const MacParams& params, Stream& rng);

// PHY header at the basic rate, MAC header and payload at the data rate.
double frame_airtime(int payload_bits, const MacParams& params);

// ACK frame: PHY header plus ack_bits, all at the basic rate.
double ack_airtime(const MacParams& params);

// Timeout armed at transmission start: data + SIFS + ACK.
double ack_timeout(double t_data_s, const MacParams& params);

}  // namespace strsim
