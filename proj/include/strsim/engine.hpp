#pragma once
// Slot-driven simulation loop.
//
// Contention advances in globally synchronized rounds: every entity whose
// backoff counter reached zero transmits at the round start, the round then
// lasts one empty slot or one full frame exchange. Cells are not assumed
// independent; concurrent transmissions anywhere enter SINR, and carrier
// sensing compares the aggregate large-scale received power against each
// node's current CST (fading applies to reception, not sensing).

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strsim/channel.hpp"
#include "strsim/mac.hpp"
#include "strsim/str.hpp"

namespace strsim {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class SimMode : uint8_t { Legacy, Str };

struct SimConfig {
  // topology
  int rings = 2;  // 0 -> 1 cell, 1 -> 7, 2 -> 19
  double cell_radius_m = 35.0;
  int n_per_cell = 15;
  double ap_spacing_m = 0.0;  // 0 -> sqrt(3) * cell_radius

  ChannelParams channel;
  MacParams mac;
  double default_cst_dbm = -82.0;
  double tolerance_db = 5.0;  // C

  // population mix; each pair must sum to 1
  double lambda_eca = 1.0;
  double lambda_ca = 0.0;
  double lambda_fd = 1.0;
  double lambda_hd = 0.0;

  SimMode mode = SimMode::Str;
  bool cst_adaptation = true;
  // The AP commits to a created UFD target only when the measured margin
  // A - B clears beta by this guard (fading headroom).
  double ufd_margin_guard_db = 3.0;

  double sim_duration_s = 2.0;
  uint64_t sim_slots = 0;  // optional slot-count cap; 0 leaves only the time limit
  uint64_t seed = 1;

  // Ideal channel: unit fading, no noise, perfect self-interference
  // cancellation. Collisions still destroy frames.
  bool ideal_channel = false;
  // Saturated downlink at the AP (the AP contends like a station).
  bool ap_saturated = true;
  // Uniform payload in [payload_min, payload_max] instead of a fixed size.
  bool variable_payload = false;
  int payload_min_bytes = 250;
  int payload_max_bytes = 1000;
};

// Throws ConfigError naming the offending field.
void validate_config(const SimConfig& cfg);

struct SlotOutcome {
  enum class Kind : uint8_t { Empty, Success, Collision } kind = Kind::Empty;
  std::vector<int> transmitters;  // in-cell contenders (node ids)
  struct StrAnnotation {
    StrMode mode = StrMode::BFD;
    int secondary_target = -1;
    bool created = false;
    bool primary_delivered = false;
    bool secondary_delivered = false;
  };
  std::optional<StrAnnotation> str;
};

// Called once per cell per busy round when tracing is enabled.
using TraceFn = std::function<void(double time_s, int cell, const SlotOutcome&)>;

struct SimResult {
  double elapsed_s = 0.0;
  double empty_time_s = 0.0;
  double success_time_s = 0.0;
  double collision_time_s = 0.0;
  uint64_t empty_rounds = 0;
  uint64_t success_rounds = 0;    // busy rounds without any in-cell collision
  uint64_t collision_rounds = 0;  // busy rounds containing one

  uint64_t cell_success_slots = 0;    // per-cell MAC outcomes, summed
  uint64_t cell_collision_slots = 0;

  uint64_t delivered_payload_bits = 0;
  uint64_t uplink_payload_bits = 0;
  uint64_t downlink_contended_payload_bits = 0;
  uint64_t secondary_payload_bits = 0;
  std::vector<uint64_t> delivered_bits_per_node;  // credited to the sender

  uint64_t primaries_delivered = 0;
  uint64_t bfd_secondaries = 0;
  uint64_t ufd_natural_secondaries = 0;
  uint64_t ufd_created_secondaries = 0;
  uint64_t lost_str_opportunities = 0;
  uint64_t predicted_primaries = 0;
  uint64_t predicted_with_created_target = 0;

  bool operator==(const SimResult&) const = default;
};

// One simulation run; a deterministic function of (cfg, seed).
SimResult run(const SimConfig& cfg, uint64_t seed, const TraceFn& trace = {});

// Legacy and STR runs of the same drop: shared placement, capability
// assignment and fading stream (common random numbers).
std::pair<SimResult, SimResult> run_paired(const SimConfig& cfg, uint64_t seed,
                                           const TraceFn& trace = {});

struct DropResult {
  uint64_t seed = 0;
  SimResult legacy;
  SimResult str;
};

// Independent drops with seeds base_seed + i; drops may execute in parallel,
// results are always ordered by drop index.
std::vector<DropResult> monte_carlo(const SimConfig& cfg, int n_drops,
                                    uint64_t base_seed, int n_threads = 0);

}  // namespace strsim
