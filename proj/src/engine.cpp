#include "strsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "strsim/sensitivity.hpp"
#include "strsim/topology.hpp"

namespace strsim {

namespace {

constexpr uint64_t kPurposePlacement = 0xA1;
constexpr uint64_t kPurposeCapability = 0xA2;
constexpr uint64_t kPurposeBackoff = 0xA3;
constexpr uint64_t kPurposePayload = 0xA4;
constexpr uint64_t kPurposeFading = 0xA5;

[[noreturn]] void invariant_failure(const char* what) {
  throw std::logic_error(std::string("engine invariant violated: ") + what);
}

#define SIM_ASSERT(cond, what) \
  do {                         \
    if (!(cond)) invariant_failure(what); \
  } while (0)

struct CreatedEntry {
  int node = -1;
  double cst_mw = 0.0;
  double margin_db = 0.0;  // AP RSSI over primary RSSI at the target
};

// Everything shared between the legacy and STR runs of one drop.
struct DropContext {
  uint64_t seed = 0;
  uint64_t fading_seed = 0;
  int n_cells = 0;
  int n_per_cell = 0;
  int n_nodes = 0;  // APs [0, n_cells), STAs [n_cells, n_nodes)

  Topology topo;
  std::vector<Vec2> pos;      // flat node positions
  std::vector<int> cell_of;   // per node
  std::vector<Capabilities> caps;

  MeasurementTable table;
  std::vector<std::vector<int>> natural_targets;           // per STA node
  std::vector<std::vector<CreatedEntry>> created_targets;  // ECA-filtered
  std::vector<bool> has_created_target;

  // Large-scale link matrices, [tx * n_nodes + rx].
  std::vector<double> rx_dbm;
  std::vector<double> rx_mw;

  int sta_node(int sta_index) const { return n_cells + sta_index; }
  int sta_index(int node) const { return node - n_cells; }
};

DropContext build_drop(const SimConfig& cfg, uint64_t seed) {
  DropContext ctx;
  ctx.seed = seed;
  ctx.fading_seed = substream(seed, kPurposeFading).state;

  auto grid = generate_hex_grid(cfg.rings, cfg.cell_radius_m, cfg.ap_spacing_m);
  Stream placement = substream(seed, kPurposePlacement);
  ctx.topo = place_stations(grid, cfg.n_per_cell, cfg.cell_radius_m, placement);

  ctx.n_cells = ctx.topo.n_cells();
  ctx.n_per_cell = cfg.n_per_cell;
  ctx.n_nodes = ctx.n_cells + ctx.topo.n_stations();

  ctx.pos.resize(ctx.n_nodes);
  ctx.cell_of.resize(ctx.n_nodes);
  ctx.caps.assign(ctx.n_nodes, Capabilities{});
  for (int c = 0; c < ctx.n_cells; ++c) {
    ctx.pos[c] = ctx.topo.ap_positions[c];
    ctx.cell_of[c] = c;
    ctx.caps[c] = Capabilities{true, true};  // APs are FD- and ECA-capable
  }
  for (int s = 0; s < ctx.topo.n_stations(); ++s) {
    ctx.pos[ctx.sta_node(s)] = ctx.topo.sta_position(s);
    ctx.cell_of[ctx.sta_node(s)] = ctx.topo.association[s];
  }

  // Capability assignment: per cell, floor(lambda * N) stations drawn by
  // shuffled order get the capability; one shuffle per capability.
  Stream capstream = substream(seed, kPurposeCapability);
  auto assign = [&](double lambda, auto set_flag) {
    int k = static_cast<int>(std::floor(lambda * cfg.n_per_cell));
    std::vector<int> order(cfg.n_per_cell);
    for (int c = 0; c < ctx.n_cells; ++c) {
      for (int i = 0; i < cfg.n_per_cell; ++i) order[i] = i;
      for (int i = cfg.n_per_cell - 1; i > 0; --i)
        std::swap(order[i], order[capstream.below(i + 1)]);
      for (int i = 0; i < k; ++i)
        set_flag(ctx.sta_node(c * cfg.n_per_cell + order[i]));
    }
  };
  assign(cfg.lambda_eca, [&](int node) { ctx.caps[node].eca = true; });
  assign(cfg.lambda_fd, [&](int node) { ctx.caps[node].fd = true; });

  ctx.table = collect_reports(ctx.topo, cfg.channel, cfg.default_cst_dbm,
                              cfg.tolerance_db);

  ctx.natural_targets.assign(ctx.n_nodes, {});
  for (auto [p, s] : natural_eligible_pairs(ctx.table, ctx.topo))
    ctx.natural_targets[ctx.sta_node(p)].push_back(ctx.sta_node(s));

  ctx.created_targets.assign(ctx.n_nodes, {});
  ctx.has_created_target.assign(ctx.n_nodes, false);
  for (int s = 0; s < ctx.topo.n_stations(); ++s) {
    int node = ctx.sta_node(s);
    for (const CreatedTarget& t :
         created_eligible_targets(ctx.table, ctx.topo, s)) {
      ctx.has_created_target[node] = true;
      int tnode = ctx.sta_node(t.sta);
      if (!ctx.caps[tnode].eca) continue;  // only ECA nodes can adapt
      double margin =
          ctx.table.a_dbm[t.sta] - *ctx.table.neighbor_rssi(t.sta, s);
      ctx.created_targets[node].push_back(
          CreatedEntry{tnode, dbm_to_mw(t.adapted_cst_dbm), margin});
    }
  }

  ctx.rx_dbm.assign(static_cast<size_t>(ctx.n_nodes) * ctx.n_nodes, kErasedDbm);
  ctx.rx_mw.assign(static_cast<size_t>(ctx.n_nodes) * ctx.n_nodes, 0.0);
  for (int a = 0; a < ctx.n_nodes; ++a) {
    for (int b = 0; b < ctx.n_nodes; ++b) {
      if (a == b) continue;
      double extra = 0.0;
      if (a >= ctx.n_cells && b >= ctx.n_cells) extra += cfg.channel.sta_obstruction_db;
      if (ctx.cell_of[a] != ctx.cell_of[b]) extra += cfg.channel.intercell_wall_db;
      double dbm = rssi_dbm(cfg.channel, distance(ctx.pos[a], ctx.pos[b]),
                            FadingSample{}, extra);
      ctx.rx_dbm[static_cast<size_t>(a) * ctx.n_nodes + b] = dbm;
      ctx.rx_mw[static_cast<size_t>(a) * ctx.n_nodes + b] = dbm_to_mw(dbm);
    }
  }
  return ctx;
}

enum class TxKind : uint8_t { Uplink, Downlink, Secondary };

struct ActiveTx {
  int tx = -1;
  int rx = -1;
  TxKind kind = TxKind::Uplink;
  int payload_bits = 0;
  double duration_s = 0.0;
  uint64_t epoch = 0;      // fading key for the (tx, rx) data link
  bool contended = true;   // participates in backoff resolution
  StrMode str_mode = StrMode::BFD;
  bool created = false;
  bool data_ok = false;
  bool acked = false;
};

struct Prediction {
  bool armed = false;
  std::optional<SecondaryTx> plan;
  int plan_payload_bits = 0;
};

class Run {
 public:
  Run(const SimConfig& cfg, const DropContext& ctx, SimMode mode, const TraceFn& trace)
      : cfg_(cfg), ctx_(ctx), mode_(mode), trace_(trace) {}

  SimResult execute();

 private:
  const SimConfig& cfg_;
  const DropContext& ctx_;
  SimMode mode_;
  const TraceFn& trace_;

  // per-node state
  std::vector<BackoffState> backoff_;
  std::vector<Stream> backoff_rng_;
  std::vector<Stream> payload_rng_;
  std::vector<uint64_t> attempts_;
  std::vector<int> next_payload_bits_;  // the frame a STA will send next
  std::vector<double> cst_mw_;
  std::vector<bool> transmitting_;
  std::vector<bool> waiting_;  // adapted targets holding for a secondary

  std::vector<int> ap_head_payload_;  // AP queue head per destination STA
  std::vector<int> rr_next_;          // per AP: round-robin cursor

  std::vector<Prediction> predictions_;
  std::vector<int> armed_bfd_plans_in_cell_;
  std::vector<std::vector<int>> armed_plan_stas_;  // per cell

  std::vector<double> busy_mw_;      // data phase aggregate
  std::vector<double> busy_ack_mw_;  // ACK phase aggregate
  std::vector<int> cell_tx_count_;
  std::vector<int> adapted_nodes_;  // nodes whose CST was raised this round

  double rsi_dbm_ = kErasedDbm;
  double noise_dbm_ = kErasedDbm;
  double default_cst_mw_ = 0.0;
  bool ideal_ = false;

  SimResult res_;

  int draw_payload_bits(Stream& rng) {
    if (!cfg_.variable_payload) return cfg_.mac.payload_bytes * 8;
    uint64_t span = static_cast<uint64_t>(cfg_.payload_max_bytes - cfg_.payload_min_bytes);
    return static_cast<int>(cfg_.payload_min_bytes + rng.below(span + 1)) * 8;
  }

  double gain(int tx, int rx, uint64_t epoch, uint64_t salt = 0) const {
    if (ideal_) return 1.0;
    return keyed_exp(ctx_.fading_seed ^ salt, static_cast<uint64_t>(tx),
                     static_cast<uint64_t>(rx), epoch);
  }

  double faded_mw(int tx, int rx, uint64_t epoch, uint64_t salt = 0) const {
    return ctx_.rx_mw[static_cast<size_t>(tx) * ctx_.n_nodes + rx] *
           gain(tx, rx, epoch, salt);
  }

  bool contends(int node) const {
    if (node >= ctx_.n_cells) return true;  // stations are saturated
    return cfg_.ap_saturated;
  }

  // An armed BFD ride fully substitutes the AP's own downlink service for
  // that station, so the AP stays off the medium while one is pending. UFD
  // rides are opportunistic: the AP keeps contending and only vacates the
  // predicted slot itself.
  bool ap_suspended(int ap) const {
    return mode_ == SimMode::Str && armed_bfd_plans_in_cell_[ap] > 0;
  }

  bool yields_to_predicted(int ap) const {
    if (mode_ != SimMode::Str) return false;
    for (int s : armed_plan_stas_[ap])
      if (backoff_[s].counter == 0) return true;
    return false;
  }

  void arm_prediction(int sta_node, double frame_duration_s);
  void resolve_round(std::vector<ActiveTx>& active);
};

void Run::arm_prediction(int sta_node, double frame_duration_s) {
  Prediction& pred = predictions_[sta_node];
  SIM_ASSERT(!pred.armed, "re-arming a live prediction");

  // The decoded frame's header carries D_next; that is all the AP needs to
  // size a secondary before the predicted slot arrives.
  FrameHeader header = build_frame_header(frame_duration_s, ctx_.caps[sta_node],
                                          next_payload_bits_[sta_node], cfg_.mac);
  SIM_ASSERT(header.d_next_s.has_value(), "ECA sender without a d_next field");
  double d_primary = *header.d_next_s;
  int ap = ctx_.cell_of[sta_node];

  SecondaryCandidates cand;
  cand.primary_fd = ctx_.caps[sta_node].fd;
  cand.queued_for_primary_s = frame_airtime(ap_head_payload_[sta_node], cfg_.mac);
  for (int t : ctx_.natural_targets[sta_node])
    cand.natural.emplace_back(t, frame_airtime(ap_head_payload_[t], cfg_.mac));
  if (cfg_.cst_adaptation) {
    cand.created_viability_db =
        cfg_.channel.sinr_threshold_db + cfg_.ufd_margin_guard_db;
    for (const CreatedEntry& t : ctx_.created_targets[sta_node])
      cand.created.push_back(CreatedCandidate{
          t.node, frame_airtime(ap_head_payload_[t.node], cfg_.mac), t.margin_db});
  }

  pred.armed = true;
  pred.plan = select_secondary(cand, d_primary);
  if (pred.plan) {
    if (pred.plan->mode == StrMode::BFD) pred.plan->target = sta_node;
    pred.plan_payload_bits = ap_head_payload_[pred.plan->target];
    TransmissionPlan check{sta_node, ap, 0.0, d_primary, pred.plan};
    SIM_ASSERT(plan_valid(check), "secondary plan breaks its end-time constraint");
    if (pred.plan->mode == StrMode::BFD) armed_bfd_plans_in_cell_[ap]++;
    armed_plan_stas_[ap].push_back(sta_node);
  }
}

SimResult Run::execute() {
  const int n = ctx_.n_nodes;
  ideal_ = cfg_.ideal_channel;
  noise_dbm_ = ideal_ ? kErasedDbm : cfg_.channel.noise_floor_dbm;
  rsi_dbm_ = ideal_ ? kErasedDbm : residual_self_interference_dbm(cfg_.channel);
  default_cst_mw_ = dbm_to_mw(cfg_.default_cst_dbm);

  backoff_.assign(n, BackoffState{});
  backoff_rng_.resize(n);
  payload_rng_.resize(n);
  attempts_.assign(n, 0);
  next_payload_bits_.assign(n, 0);
  cst_mw_.assign(n, default_cst_mw_);
  transmitting_.assign(n, false);
  waiting_.assign(n, false);
  ap_head_payload_.assign(n, 0);
  rr_next_.assign(ctx_.n_cells, 0);
  predictions_.assign(n, Prediction{});
  armed_bfd_plans_in_cell_.assign(ctx_.n_cells, 0);
  armed_plan_stas_.assign(ctx_.n_cells, {});
  busy_mw_.assign(n, 0.0);
  busy_ack_mw_.assign(n, 0.0);
  cell_tx_count_.assign(ctx_.n_cells, 0);

  for (int i = 0; i < n; ++i) {
    backoff_rng_[i] = substream(ctx_.seed, kPurposeBackoff, static_cast<uint64_t>(i));
    payload_rng_[i] = substream(ctx_.seed, kPurposePayload, static_cast<uint64_t>(i));
    backoff_[i].mode = ctx_.caps[i].eca ? MacMode::ECA : MacMode::CA;
    backoff_[i].counter = random_backoff(backoff_[i], cfg_.mac, backoff_rng_[i]);
    next_payload_bits_[i] = draw_payload_bits(payload_rng_[i]);
  }
  for (int s = ctx_.n_cells; s < n; ++s) {
    int ap = ctx_.cell_of[s];
    ap_head_payload_[s] = draw_payload_bits(payload_rng_[ap]);
  }

  res_.delivered_bits_per_node.assign(n, 0);

  std::vector<ActiveTx> active;
  std::vector<int> contenders;
  double now = 0.0;
  uint64_t rounds = 0;

  auto within_limits = [&] {
    if (cfg_.sim_slots > 0 && rounds >= cfg_.sim_slots) return false;
    return now < cfg_.sim_duration_s;
  };

  while (within_limits()) {
    rounds++;
    contenders.clear();
    for (int e = 0; e < n; ++e) {
      if (!contends(e)) continue;
      if (e < ctx_.n_cells) {
        if (ap_suspended(e)) continue;
        if (backoff_[e].counter == 0 && yields_to_predicted(e)) continue;
      }
      if (backoff_[e].counter == 0) contenders.push_back(e);
    }

    if (contenders.empty()) {
      // Idle slot: everyone senses an idle medium and counts down.
      for (int e = 0; e < n; ++e) {
        if (!contends(e)) continue;
        if (e < ctx_.n_cells && ap_suspended(e)) continue;
        if (backoff_[e].counter > 0) backoff_[e].counter--;
      }
      now += cfg_.mac.slot_time_s;
      res_.empty_time_s += cfg_.mac.slot_time_s;
      res_.empty_rounds++;
      continue;
    }

    std::fill(cell_tx_count_.begin(), cell_tx_count_.end(), 0);
    for (int e : contenders) cell_tx_count_[ctx_.cell_of[e]]++;

    active.clear();
    adapted_nodes_.clear();

    // Contended transmissions.
    for (int e : contenders) {
      ActiveTx tx;
      tx.tx = e;
      tx.contended = true;
      if (e >= ctx_.n_cells) {
        tx.kind = TxKind::Uplink;
        tx.rx = ctx_.cell_of[e];
        tx.payload_bits = next_payload_bits_[e];
        next_payload_bits_[e] = draw_payload_bits(payload_rng_[e]);
      } else {
        tx.kind = TxKind::Downlink;
        int local = rr_next_[e];
        rr_next_[e] = (local + 1) % ctx_.n_per_cell;
        tx.rx = ctx_.sta_node(e * ctx_.n_per_cell + local);
        tx.payload_bits = ap_head_payload_[tx.rx];
      }
      tx.duration_s = frame_airtime(tx.payload_bits, cfg_.mac);
      tx.epoch = attempts_[e]++;
      active.push_back(tx);
    }

    // Matured predictions: launch planned secondaries alongside solo
    // primaries, count collided ones as lost STR opportunities, and let
    // created targets adapt their CST for the span of the round.
    if (mode_ == SimMode::Str) {
      size_t n_contended = active.size();
      for (size_t i = 0; i < n_contended; ++i) {
        int s = active[i].tx;
        if (s < ctx_.n_cells || !predictions_[s].armed) continue;
        Prediction& pred = predictions_[s];
        int cell = ctx_.cell_of[s];

        res_.predicted_primaries++;
        if (ctx_.has_created_target[s]) res_.predicted_with_created_target++;

        bool solo = cell_tx_count_[cell] == 1;
        if (solo && pred.plan) {
          ActiveTx sec;
          sec.tx = cell;
          sec.rx = pred.plan->target;
          sec.kind = TxKind::Secondary;
          sec.contended = false;
          sec.payload_bits = pred.plan_payload_bits;
          sec.duration_s = pred.plan->duration_s;
          sec.epoch = attempts_[cell]++;
          sec.str_mode = pred.plan->mode;
          sec.created = pred.plan->created;
          active.push_back(sec);
        } else if (!solo) {
          res_.lost_str_opportunities++;
        }

        if (cfg_.cst_adaptation) {
          // Created targets raise their CST for the span of the primary and
          // wait for a possible secondary. They could hear the primary at
          // the default CST, so holding the counter keeps adaptation
          // contention-neutral; its modeled effect is reception eligibility.
          for (const CreatedEntry& t : ctx_.created_targets[s]) {
            if (backoff_[t.node].counter == 0) continue;  // transmitting now
            cst_mw_[t.node] = std::max(cst_mw_[t.node], t.cst_mw);
            waiting_[t.node] = true;
            adapted_nodes_.push_back(t.node);
          }
        }

        if (pred.plan) {
          if (pred.plan->mode == StrMode::BFD) armed_bfd_plans_in_cell_[cell]--;
          std::erase(armed_plan_stas_[cell], s);
        }
        pred = Prediction{};
      }
    }

    resolve_round(active);

    // New predictions from fully acknowledged ECA uplinks.
    if (mode_ == SimMode::Str) {
      for (const ActiveTx& tx : active) {
        if (tx.kind == TxKind::Uplink && tx.acked && ctx_.caps[tx.tx].eca)
          arm_prediction(tx.tx, tx.duration_s);
      }
    }

    // Round duration and bookkeeping.
    double round_s = 0.0;
    for (const ActiveTx& tx : active)
      round_s = std::max(round_s, ack_timeout(tx.duration_s, cfg_.mac) + cfg_.mac.difs_s);

    bool any_collision = false;
    for (int c = 0; c < ctx_.n_cells; ++c) {
      if (cell_tx_count_[c] >= 2) {
        any_collision = true;
        res_.cell_collision_slots++;
      } else if (cell_tx_count_[c] == 1) {
        res_.cell_success_slots++;
      }
    }
    if (any_collision) {
      res_.collision_rounds++;
      res_.collision_time_s += round_s;
    } else {
      res_.success_rounds++;
      res_.success_time_s += round_s;
    }

    if (trace_) {
      for (int c = 0; c < ctx_.n_cells; ++c) {
        if (cell_tx_count_[c] == 0) continue;
        SlotOutcome outcome;
        outcome.kind = cell_tx_count_[c] >= 2 ? SlotOutcome::Kind::Collision
                                              : SlotOutcome::Kind::Success;
        for (const ActiveTx& tx : active)
          if (tx.contended && ctx_.cell_of[tx.tx] == c)
            outcome.transmitters.push_back(tx.tx);
        for (const ActiveTx& tx : active) {
          if (tx.kind != TxKind::Secondary || tx.tx != c) continue;
          SlotOutcome::StrAnnotation ann;
          ann.mode = tx.str_mode;
          ann.secondary_target = tx.rx;
          ann.created = tx.created;
          ann.secondary_delivered = tx.acked;
          for (const ActiveTx& p : active)
            if (p.kind == TxKind::Uplink && ctx_.cell_of[p.tx] == c)
              ann.primary_delivered = p.acked;
          outcome.str = ann;
        }
        trace_(now, c, outcome);
      }
    }

    // Counter updates: transmitters get fresh backoffs, everyone else
    // freezes while its carrier sense reports busy under its current CST.
    for (const ActiveTx& tx : active) transmitting_[tx.tx] = true;
    for (int e = 0; e < n; ++e) {
      if (transmitting_[e] || !contends(e)) continue;
      if (e < ctx_.n_cells && ap_suspended(e)) continue;
      // A slot counts as idle only if neither the data phase nor the ACK
      // phase trips the node's carrier sense; adapted targets hold still.
      bool busy = waiting_[e] || busy_mw_[e] >= cst_mw_[e] ||
                  busy_ack_mw_[e] >= cst_mw_[e];
      if (!busy && backoff_[e].counter > 0) backoff_[e].counter--;
    }
    for (const ActiveTx& tx : active) {
      transmitting_[tx.tx] = false;
      if (!tx.contended) continue;
      TxOutcome out = tx.acked ? TxOutcome::Success : TxOutcome::Collision;
      backoff_[tx.tx] = on_outcome(backoff_[tx.tx], out, cfg_.mac, backoff_rng_[tx.tx]);
    }

    for (int node : adapted_nodes_) {
      cst_mw_[node] = default_cst_mw_;
      waiting_[node] = false;
    }

    now += round_s;
  }

  res_.elapsed_s = now;
  double by_kind = res_.empty_time_s + res_.success_time_s + res_.collision_time_s;
  SIM_ASSERT(std::fabs(res_.elapsed_s - by_kind) <= 1e-9 * std::max(1.0, res_.elapsed_s),
             "virtual time must equal the sum of slot durations by kind");
  if (mode_ == SimMode::Legacy)
    SIM_ASSERT(res_.secondary_payload_bits == 0, "secondary transmission in legacy mode");
  return res_;
}

void Run::resolve_round(std::vector<ActiveTx>& active) {
  const int n = ctx_.n_nodes;

  // Aggregate large-scale power for carrier sensing.
  std::fill(busy_mw_.begin(), busy_mw_.end(), 0.0);
  for (const ActiveTx& tx : active) {
    const double* row = &ctx_.rx_mw[static_cast<size_t>(tx.tx) * n];
    for (int e = 0; e < n; ++e) busy_mw_[e] += row[e];
  }

  for (const ActiveTx& tx : active) transmitting_[tx.tx] = true;

  // Data links. In-cell MAC collisions destroy every contended frame of the
  // cell outright; capture is not modeled.
  for (ActiveTx& tx : active) {
    if (tx.contended && cell_tx_count_[ctx_.cell_of[tx.tx]] >= 2) continue;
    double signal_mw = faded_mw(tx.tx, tx.rx, tx.epoch);
    double denom_mw = dbm_to_mw(noise_dbm_);
    for (const ActiveTx& other : active) {
      if (other.tx == tx.tx || other.tx == tx.rx) continue;
      denom_mw += faded_mw(other.tx, tx.rx, other.epoch);
    }
    if (transmitting_[tx.rx]) denom_mw += dbm_to_mw(rsi_dbm_);
    double sinr = denom_mw <= 0.0 ? std::numeric_limits<double>::infinity()
                                  : mw_to_dbm(signal_mw) - mw_to_dbm(denom_mw);
    tx.data_ok = reception_success(sinr, cfg_.channel.sinr_threshold_db);
  }

  // ACK phase: the receiver of every decoded frame answers after SIFS; all
  // ACKs of the round overlap. Short basic-rate control frames are treated
  // as robust between their endpoints, so a decoded frame is acknowledged;
  // what matters for the rest of the network is the ACK's energy. A station
  // deaf to a far cellmate still hears the AP acknowledge it, which is what
  // keeps a cell's idle clocks aligned.
  for (ActiveTx& tx : active) tx.acked = tx.data_ok;

  for (const ActiveTx& tx : active) transmitting_[tx.tx] = false;

  std::fill(busy_ack_mw_.begin(), busy_ack_mw_.end(), 0.0);
  for (const ActiveTx& tx : active) {
    if (!tx.data_ok) continue;
    const double* row = &ctx_.rx_mw[static_cast<size_t>(tx.rx) * n];
    for (int e = 0; e < n; ++e) busy_ack_mw_[e] += row[e];
  }

  // Deliveries.
  for (const ActiveTx& tx : active) {
    if (!tx.acked) continue;
    uint64_t bits = static_cast<uint64_t>(tx.payload_bits);
    res_.delivered_payload_bits += bits;
    res_.delivered_bits_per_node[tx.tx] += bits;
    switch (tx.kind) {
      case TxKind::Uplink:
        res_.uplink_payload_bits += bits;
        res_.primaries_delivered++;
        break;
      case TxKind::Downlink:
        res_.downlink_contended_payload_bits += bits;
        if (cfg_.variable_payload)
          ap_head_payload_[tx.rx] = draw_payload_bits(payload_rng_[tx.tx]);
        break;
      case TxKind::Secondary:
        res_.secondary_payload_bits += bits;
        if (tx.str_mode == StrMode::BFD)
          res_.bfd_secondaries++;
        else if (tx.created)
          res_.ufd_created_secondaries++;
        else
          res_.ufd_natural_secondaries++;
        if (cfg_.variable_payload)
          ap_head_payload_[tx.rx] = draw_payload_bits(payload_rng_[tx.tx]);
        break;
    }
  }
}

}  // namespace

void validate_config(const SimConfig& cfg) {
  auto check = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  check(cfg.rings >= 0 && cfg.rings <= 2, "rings must be 0, 1 or 2");
  check(cfg.cell_radius_m > 0.0, "cell_radius must be positive");
  check(cfg.n_per_cell >= 1, "n_per_cell must be >= 1");
  check(cfg.channel.pathloss_exp >= 2.0, "pathloss_exp must be >= 2");
  check(cfg.channel.pathloss_near_exp >= 2.0, "pathloss_near_exp must be >= 2");
  check(cfg.channel.pathloss_break_m >= 1.0, "pathloss_break_m must be >= 1");
  check(cfg.channel.sta_obstruction_db >= 0.0, "sta_obstruction_db must be >= 0");
  check(cfg.channel.intercell_wall_db >= 0.0, "intercell_wall_db must be >= 0");
  check(cfg.channel.rho > 0.0 && cfg.channel.rho <= 1.0, "rho must lie in (0,1]");
  check(cfg.channel.sinr_threshold_db >= 0.0, "beta must be >= 0");
  check(cfg.channel.sic_capability_db > 0.0, "sic_capability must be positive");
  check(cfg.mac.cw_min >= 2, "cw_min must be >= 2");
  check(cfg.mac.max_backoff_stage >= 0, "max_backoff_stage must be >= 0");
  check(cfg.mac.slot_time_s > 0.0 && cfg.mac.sifs_s > 0.0 && cfg.mac.difs_s > 0.0,
        "slot, SIFS and DIFS durations must be positive");
  check(cfg.mac.difs_s > cfg.mac.sifs_s, "difs must exceed sifs");
  check(cfg.mac.payload_bytes > 0, "payload_bytes must be positive");
  check(cfg.mac.data_rate_bps > 0.0 && cfg.mac.basic_rate_bps > 0.0,
        "data and basic rates must be positive");
  check(std::fabs(cfg.lambda_eca + cfg.lambda_ca - 1.0) <= 1e-9,
        "lambda_eca + lambda_ca must equal 1");
  check(std::fabs(cfg.lambda_fd + cfg.lambda_hd - 1.0) <= 1e-9,
        "lambda_fd + lambda_hd must equal 1");
  check(cfg.lambda_eca >= 0.0 && cfg.lambda_eca <= 1.0, "lambda_eca must lie in [0,1]");
  check(cfg.lambda_fd >= 0.0 && cfg.lambda_fd <= 1.0, "lambda_fd must lie in [0,1]");
  check(cfg.tolerance_db > 0.0, "tolerance must be positive");
  check(cfg.sim_duration_s >= 0.0, "sim_duration must be >= 0");
  if (cfg.variable_payload) {
    check(cfg.payload_min_bytes > 0 && cfg.payload_min_bytes <= cfg.payload_max_bytes,
          "variable payload bounds must satisfy 0 < min <= max");
  }
}

SimResult run(const SimConfig& cfg, uint64_t seed, const TraceFn& trace) {
  validate_config(cfg);
  DropContext ctx = build_drop(cfg, seed);
  return Run(cfg, ctx, cfg.mode, trace).execute();
}

std::pair<SimResult, SimResult> run_paired(const SimConfig& cfg, uint64_t seed,
                                           const TraceFn& trace) {
  validate_config(cfg);
  DropContext ctx = build_drop(cfg, seed);
  SimResult legacy = Run(cfg, ctx, SimMode::Legacy, {}).execute();
  SimResult str = Run(cfg, ctx, SimMode::Str, trace).execute();
  return {std::move(legacy), std::move(str)};
}

std::vector<DropResult> monte_carlo(const SimConfig& cfg, int n_drops,
                                    uint64_t base_seed, int n_threads) {
  if (n_drops < 1) throw ConfigError("n_drops must be >= 1");
  validate_config(cfg);

  std::vector<DropResult> results(n_drops);
  if (n_threads <= 0)
    n_threads = static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min(n_threads, n_drops));

  std::atomic<int> next{0};
  auto worker = [&]() {
    while (true) {
      int i = next.fetch_add(1);
      if (i >= n_drops) return;
      uint64_t seed = base_seed + static_cast<uint64_t>(i);
      auto [legacy, str] = run_paired(cfg, seed);
      results[i] = DropResult{seed, std::move(legacy), std::move(str)};
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace strsim
