#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wellopt/fluid.hpp"
#include "wellopt/grid.hpp"
#include "wellopt/rock.hpp"
#include "wellopt/units.hpp"
#include "wellopt/wells.hpp"

namespace wellopt {

// Production horizon and stepping control. The horizon splits into whole
// control intervals (paper case: 10 years in 2-year intervals); pressure is
// re-solved every pressure_step_days with CFL-limited explicit transport
// sub-steps in between.
struct ControlSchedule {
  double horizon_years = 10.0;
  double interval_years = 2.0;
  double pressure_step_days = 30.0;
  double max_transport_cfl = 0.9;  // fraction of the stability bound per sub-step
  double initial_pressure_bar = 260.0;
  // When set, the first producer crossing the water-cut threshold ends the
  // whole run instead of shutting in individually.
  bool terminate_field_on_water_cut = false;

  double horizon_days() const { return horizon_years * units::kDaysPerYear; }
  double interval_days() const { return interval_years * units::kDaysPerYear; }
  int n_intervals() const;
  void validate() const;
};

// Per-cell dynamic state. s_w stays in [s_wr, 1 - s_or] after every
// transport step; pressure doubles as the next solve's initial guess.
struct ReservoirState {
  std::vector<double> pressure_bar;
  std::vector<double> s_w;

  static ReservoirState uniform(const Grid& grid, double pressure_bar,
                                double s_w);
};

// Result of one pressure solve. Fluxes are total Darcy fluxes in m3/day,
// oriented toward increasing i (flux_x, (nx-1)*ny entries) and increasing j
// (flux_y, nx*(ny-1) entries). well_rates are signed m3/day, one entry per
// active well in call order: positive injects, negative produces.
struct PressureSolution {
  std::vector<double> pressure_bar;
  std::vector<double> flux_x;
  std::vector<double> flux_y;
  std::vector<double> well_rates_m3d;
};

// TPFA pressure solve with harmonic intercell transmissibilities. Face total
// mobility is the arithmetic average of the adjacent cell values; the
// simulation loop instead passes the previous step's fluxes to upwind them
// (see simulate). Well source terms are WI * lambda_t * (p_bh - p_cell).
// The linear system is solved to relative residual <= 1e-8.
// Throws SimulationError when no well is active (singular incompressible
// system) or on solver failure (carries the residual).
PressureSolution solve_pressure(const RockField& rock,
                                const ReservoirState& state,
                                std::span<const WellSpec> active_wells,
                                int interval, const FluidProps& fluid);

// Largest stable explicit transport step (days) for the given flow field:
// min over cells of pore_volume / (total_outflux * max|f_w'|). +infinity
// when nothing flows.
double transport_cfl_limit_days(const RockField& rock, const FluidProps& fluid,
                                const PressureSolution& flow,
                                std::span<const WellSpec> active_wells);

// One explicit upwind saturation update over dt_days. Injectors add pure
// water; producers remove fluid at the well cell's fractional flow. The
// updated s_w must land in [s_wr, 1 - s_or] up to 1e-12 (excursions inside
// the tolerance are snapped back, larger ones raise SimulationError).
// Throws CflError when dt_days exceeds the stability bound.
void transport_step(ReservoirState& state, const PressureSolution& flow,
                    std::span<const WellSpec> active_wells, double dt_days,
                    const RockField& rock, const FluidProps& fluid);

// Rates over one pressure step, stored as magnitudes (sign is carried by
// the role: producers split into oil and water, injectors inject water).
struct ProfileStep {
  double t_start_days = 0.0;
  double dt_days = 0.0;
  std::vector<double> producer_oil_m3d;
  std::vector<double> producer_water_m3d;
  std::vector<double> injector_water_m3d;
  std::vector<std::uint8_t> shut_in;  // per well: injectors first, then producers
  double max_rate_m3d = 0.0;          // largest |signed rate| this step
};

struct ProductionProfile {
  std::vector<std::string> injector_ids;
  std::vector<std::string> producer_ids;
  std::vector<ProfileStep> steps;

  double total_days() const;
  double cumulative_injected_m3() const;
  double cumulative_produced_m3() const;  // oil + water
  double cumulative_oil_m3() const;
};

// Case 3 outcome: a well exceeded the flow limit and the run was cut short.
// A distinguished result, not an error.
struct FlowLimitViolation {
  double t_days = 0.0;
  std::string well_id;
  double rate_m3d = 0.0;
  double limit_m3d = 0.0;
};

using SimOutcome = std::variant<ProductionProfile, FlowLimitViolation>;

// Full IMPES run: alternates pressure solves (every pressure_step_days,
// upwinding face mobilities with the previous step's fluxes) with
// CFL-sub-stepped explicit transport. At each pressure step producers whose
// water cut exceeds water_cut_threshold are shut in permanently (or the run
// ends, per schedule.terminate_field_on_water_cut). With flow_limit set,
// any well rate magnitude above it halts the run immediately with
// FlowLimitViolation. Deterministic for identical inputs.
SimOutcome simulate(const RockField& rock, const FluidProps& fluid,
                    std::span<const WellSpec> wells,
                    const ControlSchedule& schedule,
                    std::optional<double> flow_limit_m3d,
                    double water_cut_threshold);

// One row per step: time_days, dt_days, <injector>_inj_m3d...,
// <producer>_oil_m3d, <producer>_water_m3d..., <well>_shut...
void write_profile_csv(std::ostream& out, const ProductionProfile& profile);

}  // namespace wellopt
