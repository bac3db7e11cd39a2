#include "wellopt/econ.hpp"

#include <cmath>
#include <stdexcept>

namespace wellopt {

void EconomicParams::validate() const {
  if (oil_price_per_bbl < 0.0 || water_disposal_cost_per_bbl < 0.0 ||
      water_injection_cost_per_bbl < 0.0)
    throw std::invalid_argument("economics: costs must be >= 0");
  if (interest_rate < 0.0)
    throw std::invalid_argument("economics: interest rate must be >= 0");
  if (water_cut_threshold < 0.0 || water_cut_threshold > 1.0)
    throw std::invalid_argument(
        "economics: water cut threshold must lie in [0, 1]");
}

double water_cut(double q_w_m3d, double q_o_m3d) {
  if (q_w_m3d < 0.0 || q_o_m3d < 0.0)
    throw std::invalid_argument("water_cut: rates must be >= 0");
  const double total = q_w_m3d + q_o_m3d;
  return total == 0.0 ? 0.0 : q_w_m3d / total;
}

Money npv(const ProductionProfile& profile, const EconomicParams& econ) {
  econ.validate();
  constexpr double kBbl = units::kBarrelsPerCubicMeter;
  double total = 0.0;
  for (const ProfileStep& step : profile.steps) {
    if (!(step.dt_days > 0.0))
      throw std::invalid_argument("npv: step lengths must be > 0");
    double cash_per_day = 0.0;
    for (double q : step.producer_oil_m3d)
      cash_per_day += econ.oil_price_per_bbl * q * kBbl;
    for (double q : step.producer_water_m3d)
      cash_per_day -= econ.water_disposal_cost_per_bbl * q * kBbl;
    for (double q : step.injector_water_m3d)
      cash_per_day -= econ.water_injection_cost_per_bbl * q * kBbl;
    const double t_mid_years =
        (step.t_start_days + 0.5 * step.dt_days) / units::kDaysPerYear;
    total += cash_per_day * step.dt_days *
             std::pow(1.0 + econ.interest_rate, -t_mid_years);
  }
  return total;
}

Money penalized_npv(const SimOutcome& outcome, const EconomicParams& econ) {
  if (std::holds_alternative<FlowLimitViolation>(outcome))
    return kNegativeInfinity;
  return npv(std::get<ProductionProfile>(outcome), econ);
}

}  // namespace wellopt
