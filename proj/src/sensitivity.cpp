#include "strsim/sensitivity.hpp"

#include <algorithm>
#include <ostream>

namespace strsim {

std::optional<double> MeasurementTable::neighbor_rssi(int sta, int neighbor) const {
  const auto& list = neighbors[sta];
  auto it = std::lower_bound(list.begin(), list.end(), neighbor,
                             [](const NeighborEntry& e, int v) { return e.sta < v; });
  if (it != list.end() && it->sta == neighbor) return it->b_dbm;
  return std::nullopt;
}

MeasurementTable collect_reports(const Topology& topo, const ChannelParams& chan,
                                 double default_cst_dbm, double tolerance_db) {
  int n = topo.n_stations();
  MeasurementTable table;
  table.tolerance_db = tolerance_db;
  table.default_cst_dbm = default_cst_dbm;
  table.a_dbm.resize(n);
  table.neighbors.resize(n);

  for (int i = 0; i < n; ++i) {
    const Vec2& pi = topo.sta_position(i);
    table.a_dbm[i] = rssi_dbm(chan, distance(pi, topo.ap_positions[topo.association[i]]));
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      double extra = chan.sta_obstruction_db;
      if (topo.association[i] != topo.association[j]) extra += chan.intercell_wall_db;
      double b = rssi_dbm(chan, distance(pi, topo.sta_position(j)), FadingSample{}, extra);
      if (b >= default_cst_dbm)
        table.neighbors[i].push_back(MeasurementTable::NeighborEntry{j, b});
    }
  }
  return table;
}

std::vector<std::pair<int, int>> natural_eligible_pairs(const MeasurementTable& table,
                                                        const Topology& topo) {
  std::vector<std::pair<int, int>> pairs;
  int n = table.n_stations();
  for (int p = 0; p < n; ++p) {
    for (int s = 0; s < n; ++s) {
      if (s == p || topo.association[s] != topo.association[p]) continue;
      if (!table.neighbor_rssi(s, p)) pairs.emplace_back(p, s);
    }
  }
  return pairs;
}

std::vector<CreatedTarget> created_eligible_targets(const MeasurementTable& table,
                                                    const Topology& topo,
                                                    int primary) {
  std::vector<CreatedTarget> targets;
  double c = table.tolerance_db;
  for (int t = 0; t < table.n_stations(); ++t) {
    if (t == primary || topo.association[t] != topo.association[primary]) continue;
    auto b = table.neighbor_rssi(t, primary);
    if (!b) continue;  // cannot hear the primary: natural, not created
    if (*b + c <= table.a_dbm[t])
      targets.push_back(CreatedTarget{t, max_cst(table.a_dbm[t], *b, c)});
  }
  return targets;
}

void CstState::apply(double cst_dbm, double revert_at) {
  current_cst_dbm = revert_at_s ? std::max(current_cst_dbm, cst_dbm) : cst_dbm;
  revert_at_s = revert_at_s ? std::min(*revert_at_s, revert_at) : revert_at;
}

void CstState::maybe_revert(double now_s) {
  if (revert_at_s && now_s >= *revert_at_s) {
    current_cst_dbm = default_cst_dbm;
    revert_at_s.reset();
  }
}

void apply_and_revert(std::vector<CstState>& states,
                      const std::vector<CreatedTarget>& targets,
                      const std::vector<bool>& eca_capable, double t_start_s,
                      double t_end_s) {
  (void)t_start_s;
  for (const CreatedTarget& t : targets) {
    if (!eca_capable[t.sta]) continue;
    states[t.sta].apply(t.adapted_cst_dbm, t_end_s);
  }
}

void dump_measurement_table(const MeasurementTable& table, std::ostream& out) {
  out << "Node\tA\tNeighbor\tB\tC\tMaxCST\n";
  for (int i = 0; i < table.n_stations(); ++i) {
    for (const auto& e : table.neighbors[i]) {
      out << i << '\t' << table.a_dbm[i] << '\t' << e.sta << '\t' << e.b_dbm
          << '\t' << table.tolerance_db << '\t'
          << max_cst(table.a_dbm[i], e.b_dbm, table.tolerance_db) << '\n';
    }
  }
}

}  // namespace strsim
