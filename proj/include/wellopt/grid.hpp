#pragma once

#include <utility>

namespace wellopt {

// Areal reservoir grid: nx * ny cells of dx * dy * dz meters.
// Cell indices (i, j) are 1-based; linear storage is x-fastest.
struct Grid {
  int nx = 0;
  int ny = 0;
  double dx = 0.0;  // m
  double dy = 0.0;  // m
  double dz = 0.0;  // m

  void validate() const;

  int num_cells() const { return nx * ny; }
  double cell_volume() const { return dx * dy * dz; }
  double extent_x() const { return nx * dx; }
  double extent_y() const { return ny * dy; }

  bool contains(int i, int j) const {
    return i >= 1 && i <= nx && j >= 1 && j <= ny;
  }

  // 1-based (i, j) to 0-based linear index. Throws on out-of-range.
  int cell_index(int i, int j) const;

  // Center of cell (i, j) in meters: ((i-0.5)*dx, (j-0.5)*dy).
  std::pair<double, double> cell_center(int i, int j) const;
};

}  // namespace wellopt
