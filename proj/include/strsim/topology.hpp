#pragma once
// Cell grid generation and station placement.

#include <iosfwd>
#include <vector>

#include "strsim/geometry.hpp"
#include "strsim/rng.hpp"

namespace strsim {

struct Topology {
  std::vector<Vec2> ap_positions;
  std::vector<std::vector<Vec2>> sta_positions;  // one list per cell
  std::vector<int> association;                  // flat STA index -> AP index
  double cell_radius = 0.0;

  int n_cells() const { return static_cast<int>(ap_positions.size()); }
  int n_stations() const { return static_cast<int>(association.size()); }

  // Flat STA index is cell-major: cell c holds [c*n_per_cell, (c+1)*n_per_cell).
  const Vec2& sta_position(int flat_index) const;
};

// Hexagonally packed cell centers: 1, 7 or 19 cells for rings 0, 1, 2.
// Inter-center spacing defaults to sqrt(3)*cell_radius; pass spacing > 0 to
// override. Center cell sits at the origin.
std::vector<Vec2> generate_hex_grid(int rings, double cell_radius, double spacing = 0.0);

// Uniform placement of n_per_cell stations over the disc of each cell.
Topology place_stations(const std::vector<Vec2>& grid, int n_per_cell,
                        double cell_radius, Stream& rng);

// Plain-text reproducibility dump: node id, role, x, y, cell id.
void write_topology_table(const Topology& topo, std::ostream& out);

}  // namespace strsim
