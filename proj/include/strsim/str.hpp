#pragma once
// Simultaneous transmit/receive protocol logic: next-transmission prediction
// from the deterministic backoff, secondary transmission selection and
// timing, next-duration signaling, and SINR resolution of a primary plus
// secondary pair.
//
// BFD: the AP answers an FD-capable primary sender on the same airtime; the
// secondary must end no later than the primary. UFD: the AP transmits to a
// different STA that cannot hear the primary; both transmissions must end
// together, so the secondary start is delayed by the duration difference.

#include <optional>
#include <vector>

#include "strsim/channel.hpp"
#include "strsim/mac.hpp"

namespace strsim {

struct Capabilities {
  bool fd = false;
  bool eca = false;
};

// Duration goes out in the Duration ID field (NAV source); d_next rides a
// reserved header field and is only present for ECA senders with a queued
// next packet. Legacy receivers ignore it.
struct FrameHeader {
  double duration_s = 0.0;
  std::optional<double> d_next_s;
};

enum class StrMode : uint8_t { BFD, UFD };

struct SecondaryTx {
  int target = -1;
  double start_offset_s = 0.0;
  double duration_s = 0.0;
  StrMode mode = StrMode::BFD;
  bool created = false;  // target eligible only through CST adaptation
};

struct TransmissionPlan {
  int primary_sender = -1;
  int primary_receiver = -1;  // the AP
  double primary_start_s = 0.0;
  double primary_duration_s = 0.0;
  std::optional<SecondaryTx> secondary;
};

// Mode-specific end-time constraints; asserted on every plan the AP builds.
bool plan_valid(const TransmissionPlan& plan);

// Slots until the node's deterministic counter expires (B_d idle slots after
// its post-success DIFS). Only ECA nodes coming off a success are
// predictable; a collision at the predicted slot voids the opportunity.
std::optional<int> predict_next_tx(const BackoffState& state, const Capabilities& caps);

// Airtime of the sender's next queued packet, advertised in the current
// frame so the AP can pre-select a fitting secondary. ECA senders only.
std::optional<double> embed_next_duration(const Capabilities& caps,
                                          int next_payload_bits,
                                          const MacParams& params);

// Header of an outgoing data frame: the NAV duration plus, for ECA senders,
// the advertised duration of whatever sits next in their queue.
FrameHeader build_frame_header(double duration_s, const Capabilities& caps,
                               int next_payload_bits, const MacParams& params);

// Start offset of the secondary: BFD starts with the primary, UFD ends with
// it. Returns nothing when the secondary does not fit.
std::optional<double> schedule_secondary(double d_primary_s, double d_secondary_s,
                                         StrMode mode);

struct CreatedCandidate {
  int target = -1;
  double airtime_s = 0.0;
  double margin_db = 0.0;  // A - B from the measurement table
};

struct SecondaryCandidates {
  bool primary_fd = false;
  std::optional<double> queued_for_primary_s;         // head-of-queue airtime
  std::vector<std::pair<int, double>> natural;        // (target, head airtime)
  std::vector<CreatedCandidate> created;              // CST-filtered already
  // A created target is worth committing to only when its known margin
  // clears the decode threshold; below the bar the AP stays on plain
  // contention instead of gambling its downlink airtime.
  double created_viability_db = 0.0;
};

// Preference order: BFD, then natural UFD, then created UFD. Within BFD and
// natural UFD the longest-fitting queued packet wins, ties broken by lowest
// node id; created targets are ranked by measured margin instead, since the
// table tells the AP exactly how effective each one would be. Nothing
// fits -> nullopt, and the slot degrades to plain half duplex.
std::optional<SecondaryTx> select_secondary(const SecondaryCandidates& candidates,
                                            double d_primary_s);

// One evaluated link: intended signal, co-channel interferers, noise, and
// the receiver's residual self-interference when it transmits concurrently.
struct LinkBudget {
  double signal_dbm = kErasedDbm;
  std::vector<double> interferer_dbm;
  double noise_dbm = kErasedDbm;
  std::optional<double> rsi_dbm;
};

struct StrOutcome {
  bool primary_data_ok = false;
  bool secondary_data_ok = false;
  bool primary_acked = false;   // data decoded and ACK returned to the sender
  bool secondary_acked = false;
};

// SINR resolution of a plan. ACK links are evaluated only when their data
// link succeeded; a lost ACK voids the transfer for the sender.
StrOutcome resolve_str_outcome(const TransmissionPlan& plan,
                               const LinkBudget& primary_data,
                               const std::optional<LinkBudget>& secondary_data,
                               const std::optional<LinkBudget>& primary_ack,
                               const std::optional<LinkBudget>& secondary_ack,
                               double beta_db);

}  // namespace strsim
