#include "strsim/str.hpp"

#include <cmath>

namespace strsim {

namespace {
constexpr double kTimeEps = 1e-12;
}

bool plan_valid(const TransmissionPlan& plan) {
  if (plan.primary_duration_s <= 0.0) return false;
  if (!plan.secondary) return true;
  const SecondaryTx& s = *plan.secondary;
  double end_gap = plan.primary_duration_s - (s.start_offset_s + s.duration_s);
  if (s.mode == StrMode::BFD) {
    // Secondary to the primary sender itself, ending no later than the primary.
    return s.target == plan.primary_sender && s.start_offset_s == 0.0 &&
           end_gap >= -kTimeEps;
  }
  // UFD: different target, aligned ends.
  return s.target != plan.primary_sender && std::fabs(end_gap) <= kTimeEps;
}

std::optional<int> predict_next_tx(const BackoffState& state, const Capabilities& caps) {
  if (!caps.eca || state.last_outcome != TxOutcome::Success) return std::nullopt;
  return state.counter;
}

std::optional<double> embed_next_duration(const Capabilities& caps,
                                          int next_payload_bits,
                                          const MacParams& params) {
  if (!caps.eca) return std::nullopt;
  return frame_airtime(next_payload_bits, params);
}

FrameHeader build_frame_header(double duration_s, const Capabilities& caps,
                               int next_payload_bits, const MacParams& params) {
  return FrameHeader{duration_s,
                     embed_next_duration(caps, next_payload_bits, params)};
}

std::optional<double> schedule_secondary(double d_primary_s, double d_secondary_s,
                                         StrMode mode) {
  if (d_secondary_s > d_primary_s + kTimeEps) return std::nullopt;
  return mode == StrMode::BFD ? 0.0 : d_primary_s - d_secondary_s;
}

namespace {

// Longest fitting airtime, ties by lowest node id.
std::optional<SecondaryTx> best_of_class(const std::vector<std::pair<int, double>>& list,
                                         double d_primary_s, StrMode mode, bool created) {
  std::optional<SecondaryTx> best;
  for (const auto& [target, airtime] : list) {
    auto offset = schedule_secondary(d_primary_s, airtime, mode);
    if (!offset) continue;
    if (!best || airtime > best->duration_s ||
        (airtime == best->duration_s && target < best->target)) {
      best = SecondaryTx{target, *offset, airtime, mode, created};
    }
  }
  return best;
}

}  // namespace

std::optional<SecondaryTx> select_secondary(const SecondaryCandidates& candidates,
                                            double d_primary_s) {
  if (candidates.primary_fd && candidates.queued_for_primary_s) {
    auto offset = schedule_secondary(d_primary_s, *candidates.queued_for_primary_s,
                                     StrMode::BFD);
    if (offset) {
      // Target id is filled by the caller (the primary sender itself).
      return SecondaryTx{-1, *offset, *candidates.queued_for_primary_s,
                         StrMode::BFD, false};
    }
  }
  if (auto s = best_of_class(candidates.natural, d_primary_s, StrMode::UFD, false))
    return s;

  std::optional<SecondaryTx> best;
  double best_margin = 0.0;
  for (const CreatedCandidate& c : candidates.created) {
    if (c.margin_db < candidates.created_viability_db) continue;
    auto offset = schedule_secondary(d_primary_s, c.airtime_s, StrMode::UFD);
    if (!offset) continue;
    if (!best || c.margin_db > best_margin ||
        (c.margin_db == best_margin && c.target < best->target)) {
      best = SecondaryTx{c.target, *offset, c.airtime_s, StrMode::UFD, true};
      best_margin = c.margin_db;
    }
  }
  return best;
}

StrOutcome resolve_str_outcome(const TransmissionPlan& plan,
                               const LinkBudget& primary_data,
                               const std::optional<LinkBudget>& secondary_data,
                               const std::optional<LinkBudget>& primary_ack,
                               const std::optional<LinkBudget>& secondary_ack,
                               double beta_db) {
  auto link_ok = [beta_db](const LinkBudget& l) {
    return reception_success(
        sinr_db(l.signal_dbm, l.interferer_dbm, l.noise_dbm, l.rsi_dbm), beta_db);
  };

  StrOutcome out;
  out.primary_data_ok = link_ok(primary_data);
  if (plan.secondary && secondary_data) out.secondary_data_ok = link_ok(*secondary_data);
  out.primary_acked = out.primary_data_ok && primary_ack && link_ok(*primary_ack);
  out.secondary_acked = out.secondary_data_ok && secondary_ack && link_ok(*secondary_ack);
  return out;
}

}  // namespace strsim
