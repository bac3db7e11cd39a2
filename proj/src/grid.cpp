#include "wellopt/grid.hpp"

#include <stdexcept>
#include <string>

namespace wellopt {

void Grid::validate() const {
  if (nx < 1 || ny < 1)
    throw std::invalid_argument("grid: nx and ny must be >= 1");
  if (!(dx > 0.0) || !(dy > 0.0) || !(dz > 0.0))
    throw std::invalid_argument("grid: dx, dy, dz must be > 0");
}

int Grid::cell_index(int i, int j) const {
  if (!contains(i, j))
    throw std::out_of_range("grid: cell (" + std::to_string(i) + "," +
                            std::to_string(j) + ") outside " +
                            std::to_string(nx) + "x" + std::to_string(ny));
  return (j - 1) * nx + (i - 1);
}

std::pair<double, double> Grid::cell_center(int i, int j) const {
  cell_index(i, j);  // range check
  return {(i - 0.5) * dx, (j - 0.5) * dy};
}

}  // namespace wellopt
