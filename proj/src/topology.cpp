#include "strsim/topology.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace strsim {

const Vec2& Topology::sta_position(int flat_index) const {
  int per_cell = static_cast<int>(sta_positions[0].size());
  return sta_positions[flat_index / per_cell][flat_index % per_cell];
}

std::vector<Vec2> generate_hex_grid(int rings, double cell_radius, double spacing) {
  if (rings < 0 || rings > 2)
    throw std::invalid_argument("hex grid rings must be 0, 1 or 2");
  if (cell_radius <= 0.0)
    throw std::invalid_argument("cell_radius must be positive");

  double s = spacing > 0.0 ? spacing : std::sqrt(3.0) * cell_radius;
  // Axial basis for a triangular lattice of cell centers.
  const Vec2 a1{s, 0.0};
  const Vec2 a2{s * 0.5, s * std::sqrt(3.0) * 0.5};

  std::vector<Vec2> centers;
  for (int q = -rings; q <= rings; ++q) {
    int lo = std::max(-rings, -q - rings);
    int hi = std::min(rings, -q + rings);
    for (int r = lo; r <= hi; ++r) {
      centers.push_back(Vec2{q * a1.x + r * a2.x, q * a1.y + r * a2.y});
    }
  }
  return centers;
}

Topology place_stations(const std::vector<Vec2>& grid, int n_per_cell,
                        double cell_radius, Stream& rng) {
  if (n_per_cell < 1) throw std::invalid_argument("n_per_cell must be >= 1");

  Topology topo;
  topo.ap_positions = grid;
  topo.cell_radius = cell_radius;
  topo.sta_positions.resize(grid.size());

  for (size_t c = 0; c < grid.size(); ++c) {
    topo.sta_positions[c].reserve(n_per_cell);
    for (int i = 0; i < n_per_cell; ++i) {
      // sqrt(u) keeps the density uniform over the disc area.
      double r = cell_radius * std::sqrt(rng.u01());
      double phi = 2.0 * M_PI * rng.u01();
      topo.sta_positions[c].push_back(
          Vec2{grid[c].x + r * std::cos(phi), grid[c].y + r * std::sin(phi)});
      topo.association.push_back(static_cast<int>(c));
    }
  }
  return topo;
}

void write_topology_table(const Topology& topo, std::ostream& out) {
  out << "id\trole\tx\ty\tcell\n";
  int id = 0;
  for (int c = 0; c < topo.n_cells(); ++c, ++id)
    out << id << "\tap\t" << topo.ap_positions[c].x << '\t'
        << topo.ap_positions[c].y << '\t' << c << '\n';
  for (int c = 0; c < topo.n_cells(); ++c) {
    for (const Vec2& p : topo.sta_positions[c])
      out << id++ << "\tsta\t" << p.x << '\t' << p.y << '\t' << c << '\n';
  }
}

}  // namespace strsim
