#pragma once

#include <limits>

#include "wellopt/sim.hpp"

namespace wellopt {

// NPV in US dollars. Death-penalized candidates carry negative infinity;
// every other value is finite.
using Money = double;
inline constexpr Money kNegativeInfinity =
    -std::numeric_limits<double>::infinity();

struct EconomicParams {
  double oil_price_per_bbl = 80.0;
  double water_disposal_cost_per_bbl = 12.0;
  double water_injection_cost_per_bbl = 8.0;
  double interest_rate = 0.10;       // yearly, fraction
  double water_cut_threshold = 0.78;

  void validate() const;
};

// q_w / (q_w + q_o); 0 when both rates are zero.
double water_cut(double q_w_m3d, double q_o_m3d);

// Discrete NPV of a production profile: per-step cash flow
//   sum_prod (c_o q_o - c_disp q_w) B - sum_inj c_inj q_inj B   [$ / day]
// with B = 6.2898 bbl/m3, accumulated as cash * dt * (1 + r)^(-t_mid) with
// t_mid in 365-day years (midpoint rule on the simulator's steps).
Money npv(const ProductionProfile& profile, const EconomicParams& econ);

// Death-penalty wrapper: FlowLimitViolation maps to negative infinity,
// otherwise the NPV of the profile.
Money penalized_npv(const SimOutcome& outcome, const EconomicParams& econ);

}  // namespace wellopt
