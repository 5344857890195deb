#pragma once
// 802.11k-style measurement reports and carrier-sense threshold adaptation.
//
// Each STA reports the large-scale RSSI of its AP (A) and of every neighbor
// STA it can hear at the default CST (B). From those the AP derives, per
// primary transmitter, which STAs are naturally eligible secondary targets
// (cannot hear the primary at all) and which can be made eligible by raising
// their CST to min(B + C, A): deaf to the primary, still able to hear the AP.

#include <iosfwd>
#include <optional>
#include <vector>

#include "strsim/channel.hpp"
#include "strsim/topology.hpp"

namespace strsim {

struct MeasurementTable {
  struct NeighborEntry {
    int sta = -1;        // flat STA index
    double b_dbm = 0.0;  // RSSI of that neighbor
  };

  std::vector<double> a_dbm;                          // per STA: RSSI of own AP
  std::vector<std::vector<NeighborEntry>> neighbors;  // per STA, sorted by index
  double tolerance_db = 5.0;                          // C
  double default_cst_dbm = -82.0;

  int n_stations() const { return static_cast<int>(a_dbm.size()); }
  std::optional<double> neighbor_rssi(int sta, int neighbor) const;
};

// Large-scale reports (fading gain 1); neighbors below the default CST are
// omitted, which is exactly what makes them natural UFD counterparts.
MeasurementTable collect_reports(const Topology& topo, const ChannelParams& chan,
                                 double default_cst_dbm, double tolerance_db);

// Table 1 rule: the highest CST that stays deaf to the neighbor (B + C)
// without going deaf to the AP (A).
inline double max_cst(double a_dbm, double b_dbm, double tolerance_db) {
  return std::min(b_dbm + tolerance_db, a_dbm);
}

// Ordered same-cell pairs (primary, target) where the target cannot hear the
// primary at the default CST.
std::vector<std::pair<int, int>> natural_eligible_pairs(
    const MeasurementTable& table, const Topology& topo);

struct CreatedTarget {
  int sta = -1;
  double adapted_cst_dbm = 0.0;
};

// Same-cell STAs that hear the primary but can be deafened to it while still
// hearing the AP: B + C <= A. Targets failing the inequality are excluded
// (their adapted CST would drop below the AP's RSSI).
std::vector<CreatedTarget> created_eligible_targets(const MeasurementTable& table,
                                                    const Topology& topo,
                                                    int primary);

struct CstState {
  double default_cst_dbm = -82.0;
  double current_cst_dbm = -82.0;
  std::optional<double> revert_at_s;

  // Overlapping instructions keep the maximum CST and the earliest revert.
  void apply(double cst_dbm, double revert_at);
  void maybe_revert(double now_s);
};

// Adapt every ECA-capable created target of `primary` for the span of the
// primary transmission. Non-ECA nodes never adapt.
void apply_and_revert(std::vector<CstState>& states,
                      const std::vector<CreatedTarget>& targets,
                      const std::vector<bool>& eca_capable, double t_start_s,
                      double t_end_s);

// Audit dump mirroring the measurement-table columns:
// Node, A, Neighbor, B, C, MaxCST.
void dump_measurement_table(const MeasurementTable& table, std::ostream& out);

}  // namespace strsim
