#pragma once

namespace wellopt {

// Two-phase fluid description with Corey-type relative permeabilities.
// Densities are retained for documentation; the areal model has no gravity.
struct FluidProps {
  double mu_o_cp = 2.4;
  double mu_w_cp = 1.0;
  double rho_o_kgm3 = 835.0;
  double rho_w_kgm3 = 1000.0;
  double s_w_init = 0.2;
  double n_w = 2.0;  // water Corey exponent
  double n_o = 2.0;  // oil Corey exponent
  double s_wr = 0.0;  // residual water saturation
  double s_or = 0.0;  // residual oil saturation

  void validate() const;

  double s_w_max() const { return 1.0 - s_or; }
  double s_w_min() const { return s_wr; }
};

struct Mobilities {
  double water = 0.0;  // 1/cp
  double oil = 0.0;    // 1/cp
  double total() const { return water + oil; }
};

// Phase mobilities at water saturation s_w. The normalized saturation
// S = clamp((s_w - s_wr) / (1 - s_wr - s_or), 0, 1) feeds
// lambda_w = S^n_w / mu_w and lambda_o = (1-S)^n_o / mu_o.
Mobilities relative_mobility(double s_w, const FluidProps& fluid);

// Water fractional flow lambda_w / (lambda_w + lambda_o).
double fractional_flow(double s_w, const FluidProps& fluid);

// max over s_w of d f_w / d s_w, the Lipschitz constant of the transport
// flux; used for the explicit CFL bound. Evaluated by dense sampling of the
// analytic derivative.
double max_fractional_flow_slope(const FluidProps& fluid);

}  // namespace wellopt
