#pragma once
// Independent reference simulator for saturated DCF in one fully connected,
// error-free cell. Deliberately naive: a flat per-slot loop with std::mt19937_64
// draws, no carrier-sense geometry, no SINR. Used only as an oracle against
// the engine's contention machinery.

#include <cstdint>
#include <random>
#include <vector>

#include "strsim/mac.hpp"

struct NaiveDcfResult {
  uint64_t idle_slots = 0;
  uint64_t success_slots = 0;
  uint64_t collision_slots = 0;
  double elapsed_s = 0.0;
  double throughput_bps = 0.0;
  double collision_fraction = 0.0;  // collision slots over all slots
};

inline NaiveDcfResult naive_dcf(int n_nodes, bool eca, const strsim::MacParams& p,
                                double duration_s, uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto draw = [&](int stage) {
    std::uniform_int_distribution<int> dist(0, (p.cw_min << stage) - 1);
    return dist(rng);
  };

  std::vector<int> counter(n_nodes);
  std::vector<int> stage(n_nodes, 0);
  for (int i = 0; i < n_nodes; ++i) counter[i] = draw(0);

  const int payload_bits = p.payload_bytes * 8;
  const double t_data = p.phy_header_bits / p.basic_rate_bps +
                        (p.mac_header_bits + payload_bits) / p.data_rate_bps;
  const double t_ack = (p.phy_header_bits + p.ack_bits) / p.basic_rate_bps;
  const double busy_slot = t_data + p.sifs_s + t_ack + p.difs_s;
  const int deterministic = (p.cw_min + 1) / 2 - 1;

  NaiveDcfResult res;
  while (res.elapsed_s < duration_s) {
    int transmitters = 0;
    int last = -1;
    for (int i = 0; i < n_nodes; ++i) {
      if (counter[i] == 0) {
        transmitters++;
        last = i;
      }
    }

    if (transmitters == 0) {
      for (int i = 0; i < n_nodes; ++i) counter[i]--;
      res.idle_slots++;
      res.elapsed_s += p.slot_time_s;
      continue;
    }

    // Busy slot: everyone else freezes.
    if (transmitters == 1) {
      res.success_slots++;
      stage[last] = 0;
      counter[last] = eca ? deterministic : draw(0);
    } else {
      res.collision_slots++;
      for (int i = 0; i < n_nodes; ++i) {
        if (counter[i] != 0) continue;
        stage[i] = std::min(stage[i] + 1, p.max_backoff_stage);
        counter[i] = draw(stage[i]);
      }
    }
    res.elapsed_s += busy_slot;
  }

  uint64_t total = res.idle_slots + res.success_slots + res.collision_slots;
  res.throughput_bps =
      static_cast<double>(res.success_slots) * payload_bits / res.elapsed_s;
  res.collision_fraction =
      total ? static_cast<double>(res.collision_slots) / total : 0.0;
  return res;
}
