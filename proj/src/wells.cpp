#include "wellopt/wells.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace wellopt {

void WellSpec::validate(const Grid& grid, int n_intervals,
                        bool enforce_bhp_ranges) const {
  if (id.empty()) throw std::invalid_argument("well: empty id");
  if (!grid.contains(i, j))
    throw std::invalid_argument("well " + id + ": cell (" + std::to_string(i) +
                                "," + std::to_string(j) + ") outside grid");
  if (!(r_w > 0.0))
    throw std::invalid_argument("well " + id + ": r_w must be > 0");
  if (static_cast<int>(bhp_bar.size()) != n_intervals)
    throw std::invalid_argument(
        "well " + id + ": expected " + std::to_string(n_intervals) +
        " BHP values, got " + std::to_string(bhp_bar.size()));
  if (enforce_bhp_ranges) {
    const double lo = kind == WellKind::kInjector ? kInjectorBhpMin
                                                  : kProducerBhpMin;
    const double hi = kind == WellKind::kInjector ? kInjectorBhpMax
                                                  : kProducerBhpMax;
    for (double p : bhp_bar)
      if (p < lo || p > hi)
        throw std::invalid_argument("well " + id + ": BHP " +
                                    std::to_string(p) + " bar outside [" +
                                    std::to_string(lo) + ", " +
                                    std::to_string(hi) + "]");
  }
}

double peaceman_equivalent_radius(const Grid& grid, double kx_md,
                                  double ky_md) {
  if (!(kx_md > 0.0) || !(ky_md > 0.0))
    throw std::invalid_argument("peaceman: permeabilities must be > 0");
  const double ratio = ky_md / kx_md;
  const double num = std::sqrt(std::sqrt(ratio) * grid.dx * grid.dx +
                               std::sqrt(1.0 / ratio) * grid.dy * grid.dy);
  const double den = std::pow(ratio, 0.25) + std::pow(1.0 / ratio, 0.25);
  return 0.28 * num / den;
}

double peaceman_well_index(const Grid& grid, double kx_md, double ky_md,
                           double r_w) {
  if (!(r_w > 0.0))
    throw std::invalid_argument("peaceman: r_w must be > 0");
  const double r_e = peaceman_equivalent_radius(grid, kx_md, ky_md);
  if (r_w >= r_e)
    throw std::invalid_argument("peaceman: r_w " + std::to_string(r_w) +
                                " m must be smaller than r_e " +
                                std::to_string(r_e) + " m");
  return 2.0 * std::numbers::pi * std::sqrt(kx_md * ky_md) * grid.dz /
         std::log(r_e / r_w);
}

}  // namespace wellopt
