#pragma once

#include <atomic>
#include <optional>
#include <span>
#include <vector>

#include "wellopt/de.hpp"
#include "wellopt/econ.hpp"
#include "wellopt/rock.hpp"
#include "wellopt/sim.hpp"

namespace wellopt {

// Candidate layout: D = 2 * n_wells reals, consecutive (x, y) pairs in grid
// coordinates, injectors first. Decoding rounds half away from zero and
// clamps to the grid.
struct DecodedWell {
  int i = 0;
  int j = 0;
};

std::vector<DecodedWell> decode_wells(std::span<const double> x,
                                      const Grid& grid);

// Minimum pairwise distance (m) between the decoded wells' cell centers.
double min_well_distance(std::span<const double> x, const Grid& grid,
                         int n_wells);

// Everything a fitness evaluation needs. Immutable during an optimization
// run; safe to share across concurrently evaluating threads.
struct ObjectiveContext {
  RockField rock;
  FluidProps fluid;
  ControlSchedule schedule;
  EconomicParams econ;
  std::optional<double> flow_limit_m3d;
  double min_distance_m = 250.0;
  int n_injectors = 2;
  int n_producers = 2;
  double wellbore_radius_m = 0.1;
  std::vector<double> injector_bhp_bar;  // per control interval
  std::vector<double> producer_bhp_bar;

  // counts actual reservoir simulations (distance-rejected candidates skip
  // the simulator entirely)
  mutable std::atomic<long> simulations_run{0};

  ObjectiveContext() = default;
  ObjectiveContext(const ObjectiveContext& other);

  int n_wells() const { return n_injectors + n_producers; }

  // [1, nx] x [1, ny] per well, alternating components.
  ProblemBounds bounds() const;

  void validate() const;

  // Death-penalty objective: candidates closer than min_distance_m (strict)
  // are -inf without simulating; flow-limit violations map to -inf;
  // everything else is the NPV of the simulated profile. Simulator errors
  // propagate as exceptions (run-aborting, not penalties).
  Money evaluate(std::span<const double> x) const;

  // The wells a candidate decodes to (ids inj1.., prod1..).
  std::vector<WellSpec> wells_for(std::span<const double> x) const;
};

}  // namespace wellopt
