#pragma once

#include <string>
#include <vector>

#include "wellopt/grid.hpp"

namespace wellopt {

enum class WellKind { kInjector, kProducer };

// Default BHP windows (bar) for protocol validation.
inline constexpr double kInjectorBhpMin = 275.0;
inline constexpr double kInjectorBhpMax = 450.0;
inline constexpr double kProducerBhpMin = 100.0;
inline constexpr double kProducerBhpMax = 250.0;

// BHP-controlled vertical well completed in a single cell.
struct WellSpec {
  std::string id;
  WellKind kind = WellKind::kProducer;
  int i = 0;  // 1-based cell
  int j = 0;
  double r_w = 0.1;  // wellbore radius, m
  std::vector<double> bhp_bar;  // one entry per control interval

  // Structural checks: cell inside grid, r_w > 0, one BHP per interval.
  // When enforce_bhp_ranges is set the BHP values must also lie inside the
  // protocol windows above; library users running synthetic experiments
  // (e.g. equal-BHP equilibrium checks) can skip that.
  void validate(const Grid& grid, int n_intervals,
                bool enforce_bhp_ranges = false) const;

  double bhp_for_interval(int interval) const { return bhp_bar.at(interval); }
};

// Peaceman well index for an anisotropic cell, in mD*m:
//   r_e = 0.28 * sqrt(sqrt(ky/kx) dx^2 + sqrt(kx/ky) dy^2)
//               / ((ky/kx)^(1/4) + (kx/ky)^(1/4))
//   WI  = 2 pi sqrt(kx ky) dz / ln(r_e / r_w)
// For kx == ky this reduces to r_e = 0.14 sqrt(dx^2 + dy^2).
// Throws std::invalid_argument unless kx, ky, r_w > 0 and r_w < r_e.
double peaceman_well_index(const Grid& grid, double kx_md, double ky_md,
                           double r_w);

// Equivalent radius r_e of the formula above, in meters.
double peaceman_equivalent_radius(const Grid& grid, double kx_md,
                                  double ky_md);

}  // namespace wellopt
