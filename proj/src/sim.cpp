#include "wellopt/sim.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <set>
#include <stdexcept>

#include "wellopt/errors.hpp"

namespace wellopt {

namespace {

// (mD*m) * (1/cp) * bar -> m3/day
constexpr double kRateFactor = units::kMilliDarcyToM2 * units::kBarToPascal *
                               units::kSecondsPerDay /
                               units::kCentipoiseToPascalSecond;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct ActiveWell {
  int cell = 0;        // 0-based linear
  double wi_mdm = 0.0;  // Peaceman index, mD*m
  double bhp_bar = 0.0;
};

std::vector<ActiveWell> bind_wells(const RockField& rock,
                                   std::span<const WellSpec> wells,
                                   int interval) {
  std::vector<ActiveWell> bound;
  bound.reserve(wells.size());
  for (const WellSpec& w : wells) {
    const int c = rock.grid.cell_index(w.i, w.j);
    bound.push_back({c,
                     peaceman_well_index(rock.grid, rock.perm_x[c],
                                         rock.perm_y[c], w.r_w),
                     w.bhp_for_interval(interval)});
  }
  return bound;
}

// max |f_w'| is a pure function of the fluid; memoize the last one seen
// since a simulation re-queries it every sub-step.
double cached_max_slope(const FluidProps& fluid) {
  struct Key {
    double mu_o, mu_w, n_w, n_o, s_wr, s_or;
    bool operator==(const Key&) const = default;
  };
  thread_local Key key{-1, -1, -1, -1, -1, -1};
  thread_local double slope = 0.0;
  const Key now{fluid.mu_o_cp, fluid.mu_w_cp, fluid.n_w,
                fluid.n_o,     fluid.s_wr,    fluid.s_or};
  if (!(now == key)) {
    slope = max_fractional_flow_slope(fluid);
    key = now;
  }
  return slope;
}

// TPFA assembly and solve with a cached sparsity pattern. The first solve
// factorizes exactly; later solves run PCG preconditioned by the frozen
// factorization and warm-started at the previous pressure, refreshing the
// factorization when the iteration count degrades. All paths verify the
// true relative residual against the 1e-8 contract.
class PressureSolver {
 public:
  PressureSolver(const RockField& rock, const FluidProps& fluid)
      : rock_(rock), fluid_(fluid), grid_(rock.grid) {
    rock_.validate();
    fluid_.validate();
    const int nx = grid_.nx, ny = grid_.ny;
    n_ = grid_.num_cells();
    nfx_ = (nx - 1) * ny;
    nfy_ = nx * (ny - 1);

    tgeo_x_.resize(nfx_);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i + 1 < nx; ++i) {
        const int a = j * nx + i;
        const double ka = rock_.perm_x[a], kb = rock_.perm_x[a + 1];
        tgeo_x_[j * (nx - 1) + i] =
            (2.0 * ka * kb / (ka + kb)) * grid_.dy * grid_.dz / grid_.dx;
      }
    tgeo_y_.resize(nfy_);
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int a = j * nx + i;
        const double ka = rock_.perm_y[a], kb = rock_.perm_y[a + nx];
        tgeo_y_[j * nx + i] =
            (2.0 * ka * kb / (ka + kb)) * grid_.dx * grid_.dz / grid_.dy;
      }

    build_pattern();
    lambda_.resize(n_);
    b_.resize(n_);
    x_.resize(n_);
    r_.resize(n_);
    z_.resize(n_);
    p_.resize(n_);
    ap_.resize(n_);
  }

  PressureSolution solve(const ReservoirState& state,
                         std::span<const ActiveWell> wells,
                         const std::vector<double>* prev_flux_x,
                         const std::vector<double>* prev_flux_y) {
    if (wells.empty())
      throw SimulationError(
          "pressure solve: no active BHP well, incompressible system is "
          "singular");
    if (static_cast<int>(state.s_w.size()) != n_ ||
        static_cast<int>(state.pressure_bar.size()) != n_)
      throw std::invalid_argument("pressure solve: state size mismatch");

    for (int c = 0; c < n_; ++c)
      lambda_[c] = relative_mobility(state.s_w[c], fluid_).total();

    assemble(wells, prev_flux_x, prev_flux_y);
    run_linear_solve(state);

    PressureSolution sol;
    sol.pressure_bar.assign(x_.data(), x_.data() + n_);
    extract_fluxes(sol, prev_flux_x, prev_flux_y);
    extract_well_rates(sol, wells);
    check_invariants(sol, wells);
    return sol;
  }

 private:
  void build_pattern() {
    const int nx = grid_.nx, ny = grid_.ny;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(n_ + 2 * (nfx_ + nfy_));
    for (int c = 0; c < n_; ++c) trips.emplace_back(c, c, 0.0);
    auto both = [&](int a, int b) {
      trips.emplace_back(a, b, 0.0);
      trips.emplace_back(b, a, 0.0);
    };
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i + 1 < nx; ++i) both(j * nx + i, j * nx + i + 1);
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i < nx; ++i) both(j * nx + i, j * nx + i + nx);
    mat_.resize(n_, n_);
    mat_.setFromTriplets(trips.begin(), trips.end());
    mat_.makeCompressed();

    diag_slot_.resize(n_);
    for (int c = 0; c < n_; ++c) diag_slot_[c] = slot(c, c);
    xoff_ab_.resize(nfx_);
    xoff_ba_.resize(nfx_);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i + 1 < nx; ++i) {
        const int f = j * (nx - 1) + i, a = j * nx + i, b = a + 1;
        xoff_ab_[f] = slot(a, b);
        xoff_ba_[f] = slot(b, a);
      }
    yoff_ab_.resize(nfy_);
    yoff_ba_.resize(nfy_);
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int f = j * nx + i, a = j * nx + i, b = a + nx;
        yoff_ab_[f] = slot(a, b);
        yoff_ba_[f] = slot(b, a);
      }
  }

  // position of (row, col) in the compressed storage
  int slot(int row, int col) const {
    const int* outer = mat_.outerIndexPtr();
    const int* inner = mat_.innerIndexPtr();
    for (int k = outer[col]; k < outer[col + 1]; ++k)
      if (inner[k] == row) return k;
    throw std::logic_error("pressure solver: missing pattern slot");
  }

  double face_lambda(int a, int b, double prev_flux) const {
    if (prev_flux > 0.0) return lambda_[a];
    if (prev_flux < 0.0) return lambda_[b];
    return 0.5 * (lambda_[a] + lambda_[b]);
  }

  void assemble(std::span<const ActiveWell> wells,
                const std::vector<double>* prev_fx,
                const std::vector<double>* prev_fy) {
    const int nx = grid_.nx, ny = grid_.ny;
    double* vals = mat_.valuePtr();
    std::fill(vals, vals + mat_.nonZeros(), 0.0);
    b_.setZero();

    face_lam_x_.resize(nfx_);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i + 1 < nx; ++i) {
        const int f = j * (nx - 1) + i, a = j * nx + i, b = a + 1;
        const double lam =
            face_lambda(a, b, prev_fx ? (*prev_fx)[f] : 0.0);
        face_lam_x_[f] = lam;
        const double t = tgeo_x_[f] * lam;
        vals[diag_slot_[a]] += t;
        vals[diag_slot_[b]] += t;
        vals[xoff_ab_[f]] -= t;
        vals[xoff_ba_[f]] -= t;
      }
    face_lam_y_.resize(nfy_);
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int f = j * nx + i, a = j * nx + i, b = a + nx;
        const double lam =
            face_lambda(a, b, prev_fy ? (*prev_fy)[f] : 0.0);
        face_lam_y_[f] = lam;
        const double t = tgeo_y_[f] * lam;
        vals[diag_slot_[a]] += t;
        vals[diag_slot_[b]] += t;
        vals[yoff_ab_[f]] -= t;
        vals[yoff_ba_[f]] -= t;
      }
    for (const ActiveWell& w : wells) {
      const double a = w.wi_mdm * lambda_[w.cell];
      vals[diag_slot_[w.cell]] += a;
      b_[w.cell] += a * w.bhp_bar;
    }
  }

  void run_linear_solve(const ReservoirState& state) {
    const double bnorm = b_.norm();
    if (bnorm == 0.0) {
      x_.setZero();
      return;
    }

    if (!factorized_) {
      factorize();
      x_ = ldlt_.solve(b_);
    } else {
      for (int c = 0; c < n_; ++c) x_[c] = state.pressure_bar[c];
      const int iters = pcg(bnorm);
      if (iters < 0) {  // did not converge on the stale preconditioner
        factorize();
        x_ = ldlt_.solve(b_);
      } else if (iters > 25) {
        factorize();  // refresh for the next step
      }
    }

    r_.noalias() = b_ - mat_ * x_;
    const double rel = r_.norm() / bnorm;
    if (rel > 1e-8) {
      factorize();
      x_ = ldlt_.solve(b_);
      r_.noalias() = b_ - mat_ * x_;
      const double rel2 = r_.norm() / bnorm;
      if (rel2 > 1e-8)
        throw SimulationError("pressure solve failed to converge", rel2);
    }
  }

  void factorize() {
    if (!pattern_analyzed_) {
      ldlt_.analyzePattern(mat_);
      pattern_analyzed_ = true;
    }
    ldlt_.factorize(mat_);
    if (ldlt_.info() != Eigen::Success)
      throw SimulationError("pressure solve: factorization failed");
    factorized_ = true;
  }

  // Preconditioned CG on the current matrix using the frozen factorization.
  // Returns the iteration count, or -1 if max_iters was hit.
  int pcg(double bnorm) {
    constexpr int kMaxIters = 200;
    const double tol = 1e-12 * bnorm;
    r_.noalias() = b_ - mat_ * x_;
    if (r_.norm() <= tol) return 0;
    z_ = ldlt_.solve(r_);
    p_ = z_;
    double rz = r_.dot(z_);
    for (int it = 1; it <= kMaxIters; ++it) {
      ap_.noalias() = mat_ * p_;
      const double alpha = rz / p_.dot(ap_);
      x_ += alpha * p_;
      r_ -= alpha * ap_;
      if (r_.norm() <= tol) return it;
      z_ = ldlt_.solve(r_);
      const double rz_new = r_.dot(z_);
      p_ = z_ + (rz_new / rz) * p_;
      rz = rz_new;
    }
    return -1;
  }

  void extract_fluxes(PressureSolution& sol, const std::vector<double>*,
                      const std::vector<double>*) const {
    const int nx = grid_.nx, ny = grid_.ny;
    sol.flux_x.resize(nfx_);
    for (int j = 0; j < ny; ++j)
      for (int i = 0; i + 1 < nx; ++i) {
        const int f = j * (nx - 1) + i, a = j * nx + i;
        sol.flux_x[f] =
            tgeo_x_[f] * face_lam_x_[f] * (x_[a] - x_[a + 1]) * kRateFactor;
      }
    sol.flux_y.resize(nfy_);
    for (int j = 0; j + 1 < ny; ++j)
      for (int i = 0; i < nx; ++i) {
        const int f = j * nx + i, a = j * nx + i;
        sol.flux_y[f] =
            tgeo_y_[f] * face_lam_y_[f] * (x_[a] - x_[a + nx]) * kRateFactor;
      }
  }

  void extract_well_rates(PressureSolution& sol,
                          std::span<const ActiveWell> wells) const {
    sol.well_rates_m3d.resize(wells.size());
    for (std::size_t k = 0; k < wells.size(); ++k) {
      const ActiveWell& w = wells[k];
      sol.well_rates_m3d[k] = w.wi_mdm * lambda_[w.cell] *
                              (w.bhp_bar - x_[w.cell]) * kRateFactor;
    }
  }

  void check_invariants(const PressureSolution& sol,
                        std::span<const ActiveWell> wells) const {
    double sum = 0.0, abs_sum = 0.0;
    for (double q : sol.well_rates_m3d) {
      sum += q;
      abs_sum += std::abs(q);
    }
    if (std::abs(sum) > 1e-6 * abs_sum + 1e-7)
      throw SimulationError(
          "pressure solve: well rates violate mass balance", std::abs(sum));

    double lo = kInf, hi = -kInf;
    for (const ActiveWell& w : wells) {
      lo = std::min(lo, w.bhp_bar);
      hi = std::max(hi, w.bhp_bar);
    }
    const double tol = 1e-3;  // bar
    for (int c = 0; c < n_; ++c)
      if (sol.pressure_bar[c] < lo - tol || sol.pressure_bar[c] > hi + tol)
        throw SimulationError(
            "pressure solve: cell pressure outside BHP envelope (maximum "
            "principle violated)",
            sol.pressure_bar[c]);
  }

  RockField rock_;
  FluidProps fluid_;
  Grid grid_;
  int n_ = 0, nfx_ = 0, nfy_ = 0;
  std::vector<double> tgeo_x_, tgeo_y_;     // mD*m
  std::vector<double> lambda_;              // 1/cp per cell
  std::vector<double> face_lam_x_, face_lam_y_;
  Eigen::SparseMatrix<double> mat_;
  std::vector<int> diag_slot_, xoff_ab_, xoff_ba_, yoff_ab_, yoff_ba_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  bool pattern_analyzed_ = false;
  bool factorized_ = false;
  Eigen::VectorXd b_, x_, r_, z_, p_, ap_;
};

double cfl_limit_days(const RockField& rock, const FluidProps& fluid,
                      const PressureSolution& flow,
                      std::span<const ActiveWell> wells) {
  const Grid& g = rock.grid;
  const int nx = g.nx, ny = g.ny, n = g.num_cells();
  thread_local std::vector<double> out;
  out.assign(n, 0.0);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      const double v = flow.flux_x[j * (nx - 1) + i];
      const int a = j * nx + i;
      if (v >= 0.0)
        out[a] += v;
      else
        out[a + 1] -= v;
    }
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double v = flow.flux_y[j * nx + i];
      const int a = j * nx + i;
      if (v >= 0.0)
        out[a] += v;
      else
        out[a + nx] -= v;
    }
  for (std::size_t k = 0; k < wells.size(); ++k) {
    const double q = flow.well_rates_m3d[k];
    if (q < 0.0) out[wells[k].cell] -= q;
  }

  const double slope = cached_max_slope(fluid);
  const double volume = g.cell_volume();
  double dt = kInf;
  for (int c = 0; c < n; ++c)
    if (out[c] > 0.0)
      dt = std::min(dt, rock.porosity[c] * volume / (out[c] * slope));
  return dt;
}

void transport_substep(ReservoirState& state, const PressureSolution& flow,
                       std::span<const ActiveWell> wells, double dt_days,
                       const RockField& rock, const FluidProps& fluid) {
  const Grid& g = rock.grid;
  const int nx = g.nx, ny = g.ny, n = g.num_cells();

  thread_local std::vector<double> fw, acc;
  fw.resize(n);
  acc.assign(n, 0.0);
  for (int c = 0; c < n; ++c) fw[c] = fractional_flow(state.s_w[c], fluid);

  for (int j = 0; j < ny; ++j)
    for (int i = 0; i + 1 < nx; ++i) {
      const double v = flow.flux_x[j * (nx - 1) + i];
      const int a = j * nx + i;
      const double wflux = (v >= 0.0 ? fw[a] : fw[a + 1]) * v;
      acc[a] -= wflux;
      acc[a + 1] += wflux;
    }
  for (int j = 0; j + 1 < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double v = flow.flux_y[j * nx + i];
      const int a = j * nx + i;
      const double wflux = (v >= 0.0 ? fw[a] : fw[a + nx]) * v;
      acc[a] -= wflux;
      acc[a + nx] += wflux;
    }
  // q > 0 adds pure water; q < 0 removes fluid at the cell's fractional flow
  for (std::size_t k = 0; k < wells.size(); ++k) {
    const double q = flow.well_rates_m3d[k];
    const int c = wells[k].cell;
    acc[c] += q > 0.0 ? q : fw[c] * q;
  }

  const double s_lo = fluid.s_w_min(), s_hi = fluid.s_w_max();
  const double volume = g.cell_volume();
  for (int c = 0; c < n; ++c) {
    double s = state.s_w[c] + dt_days * acc[c] / (rock.porosity[c] * volume);
    if (s < s_lo - 1e-12 || s > s_hi + 1e-12)
      throw SimulationError("transport: saturation overshoot", s);
    state.s_w[c] = std::clamp(s, s_lo, s_hi);
  }
}

}  // namespace

int ControlSchedule::n_intervals() const {
  return static_cast<int>(std::lround(horizon_years / interval_years));
}

void ControlSchedule::validate() const {
  if (!(horizon_years > 0.0) || !(interval_years > 0.0))
    throw std::invalid_argument("schedule: horizon and interval must be > 0");
  const double ratio = horizon_years / interval_years;
  if (std::abs(ratio - std::lround(ratio)) > 1e-9)
    throw std::invalid_argument(
        "schedule: horizon must divide into whole control intervals");
  if (!(pressure_step_days > 0.0))
    throw std::invalid_argument("schedule: pressure_step_days must be > 0");
  if (!(max_transport_cfl > 0.0) || max_transport_cfl > 1.0)
    throw std::invalid_argument("schedule: max_transport_cfl must be in (0, 1]");
}

ReservoirState ReservoirState::uniform(const Grid& grid, double pressure_bar,
                                       double s_w) {
  grid.validate();
  ReservoirState state;
  state.pressure_bar.assign(grid.num_cells(), pressure_bar);
  state.s_w.assign(grid.num_cells(), s_w);
  return state;
}

PressureSolution solve_pressure(const RockField& rock,
                                const ReservoirState& state,
                                std::span<const WellSpec> active_wells,
                                int interval, const FluidProps& fluid) {
  PressureSolver solver(rock, fluid);
  const auto bound = bind_wells(rock, active_wells, interval);
  return solver.solve(state, bound, nullptr, nullptr);
}

double transport_cfl_limit_days(const RockField& rock, const FluidProps& fluid,
                                const PressureSolution& flow,
                                std::span<const WellSpec> active_wells) {
  if (active_wells.size() != flow.well_rates_m3d.size())
    throw std::invalid_argument("cfl: wells do not match solution rates");
  const auto bound = bind_wells(rock, active_wells, 0);
  return cfl_limit_days(rock, fluid, flow, bound);
}

void transport_step(ReservoirState& state, const PressureSolution& flow,
                    std::span<const WellSpec> active_wells, double dt_days,
                    const RockField& rock, const FluidProps& fluid) {
  if (active_wells.size() != flow.well_rates_m3d.size())
    throw std::invalid_argument("transport: wells do not match solution rates");
  if (!(dt_days > 0.0))
    throw std::invalid_argument("transport: dt must be > 0");
  const auto bound = bind_wells(rock, active_wells, 0);
  const double limit = cfl_limit_days(rock, fluid, flow, bound);
  if (dt_days > limit * (1.0 + 1e-9)) throw CflError(dt_days, limit);
  transport_substep(state, flow, bound, dt_days, rock, fluid);
}

double ProductionProfile::total_days() const {
  double t = 0.0;
  for (const ProfileStep& s : steps) t += s.dt_days;
  return t;
}

double ProductionProfile::cumulative_injected_m3() const {
  double v = 0.0;
  for (const ProfileStep& s : steps)
    for (double q : s.injector_water_m3d) v += q * s.dt_days;
  return v;
}

double ProductionProfile::cumulative_produced_m3() const {
  double v = 0.0;
  for (const ProfileStep& s : steps) {
    for (double q : s.producer_oil_m3d) v += q * s.dt_days;
    for (double q : s.producer_water_m3d) v += q * s.dt_days;
  }
  return v;
}

double ProductionProfile::cumulative_oil_m3() const {
  double v = 0.0;
  for (const ProfileStep& s : steps)
    for (double q : s.producer_oil_m3d) v += q * s.dt_days;
  return v;
}

SimOutcome simulate(const RockField& rock, const FluidProps& fluid,
                    std::span<const WellSpec> wells,
                    const ControlSchedule& schedule,
                    std::optional<double> flow_limit_m3d,
                    double water_cut_threshold) {
  rock.validate();
  fluid.validate();
  schedule.validate();
  if (wells.empty()) throw std::invalid_argument("simulate: no wells");
  const int n_int = schedule.n_intervals();
  std::set<std::string> ids;
  for (const WellSpec& w : wells) {
    w.validate(rock.grid, n_int);
    if (!ids.insert(w.id).second)
      throw std::invalid_argument("simulate: duplicate well id " + w.id);
  }

  std::vector<std::size_t> inj_order, prod_order;  // profile column order
  for (std::size_t k = 0; k < wells.size(); ++k)
    (wells[k].kind == WellKind::kInjector ? inj_order : prod_order).push_back(k);

  ProductionProfile profile;
  for (auto k : inj_order) profile.injector_ids.push_back(wells[k].id);
  for (auto k : prod_order) profile.producer_ids.push_back(wells[k].id);

  ReservoirState state = ReservoirState::uniform(
      rock.grid, schedule.initial_pressure_bar, fluid.s_w_init);
  std::vector<bool> shut(wells.size(), false);

  PressureSolver solver(rock, fluid);
  std::vector<double> prev_fx, prev_fy;
  bool have_prev = false;

  const double horizon = schedule.horizon_days();
  const double interval_days = schedule.interval_days();
  double t = 0.0;
  while (t < horizon - 1e-9) {
    const double dt_step = std::min(schedule.pressure_step_days, horizon - t);
    const int interval =
        std::min(static_cast<int>(t / interval_days), n_int - 1);

    // permanent shut-in on water cut; producers remove fluid at the cell's
    // fractional flow, so the cut equals f_w at the well cell
    bool field_done = false;
    for (std::size_t k = 0; k < wells.size(); ++k) {
      if (wells[k].kind != WellKind::kProducer || shut[k]) continue;
      const int c = rock.grid.cell_index(wells[k].i, wells[k].j);
      if (fractional_flow(state.s_w[c], fluid) > water_cut_threshold) {
        if (schedule.terminate_field_on_water_cut) {
          field_done = true;
          break;
        }
        shut[k] = true;
      }
    }
    if (field_done) break;

    std::vector<std::size_t> active;  // indices into wells
    for (std::size_t k = 0; k < wells.size(); ++k)
      if (!shut[k]) active.push_back(k);
    if (active.empty()) break;  // producers only and all shut in

    std::vector<ActiveWell> bound;
    bound.reserve(active.size());
    for (auto k : active) {
      const int c = rock.grid.cell_index(wells[k].i, wells[k].j);
      bound.push_back({c,
                       peaceman_well_index(rock.grid, rock.perm_x[c],
                                           rock.perm_y[c], wells[k].r_w),
                       wells[k].bhp_for_interval(interval)});
    }

    PressureSolution sol =
        solver.solve(state, bound, have_prev ? &prev_fx : nullptr,
                     have_prev ? &prev_fy : nullptr);

    if (flow_limit_m3d) {
      for (std::size_t a = 0; a < active.size(); ++a) {
        const double q = std::abs(sol.well_rates_m3d[a]);
        if (q > *flow_limit_m3d)
          return FlowLimitViolation{t, wells[active[a]].id, q,
                                    *flow_limit_m3d};
      }
    }

    ProfileStep step;
    step.t_start_days = t;
    step.dt_days = dt_step;
    std::vector<double> signed_rate(wells.size(), 0.0);
    for (std::size_t a = 0; a < active.size(); ++a)
      signed_rate[active[a]] = sol.well_rates_m3d[a];
    for (auto k : inj_order) {
      step.injector_water_m3d.push_back(std::max(signed_rate[k], 0.0));
      step.max_rate_m3d = std::max(step.max_rate_m3d, std::abs(signed_rate[k]));
    }
    for (auto k : prod_order) {
      const int c = rock.grid.cell_index(wells[k].i, wells[k].j);
      const double produced = std::max(-signed_rate[k], 0.0);
      const double cut = fractional_flow(state.s_w[c], fluid);
      step.producer_water_m3d.push_back(produced * cut);
      step.producer_oil_m3d.push_back(produced * (1.0 - cut));
      step.max_rate_m3d = std::max(step.max_rate_m3d, std::abs(signed_rate[k]));
    }
    for (auto k : inj_order) step.shut_in.push_back(shut[k] ? 1 : 0);
    for (auto k : prod_order) step.shut_in.push_back(shut[k] ? 1 : 0);
    profile.steps.push_back(std::move(step));

    const double dt_limit = cfl_limit_days(rock, fluid, sol, bound);
    long nsub = 1;
    if (std::isfinite(dt_limit)) {
      nsub = std::max(
          1L, static_cast<long>(std::ceil(
                  dt_step / (schedule.max_transport_cfl * dt_limit))));
      if (nsub > 2'000'000)
        throw SimulationError(
            "transport: CFL limit requires more than 2e6 sub-steps",
            dt_limit);
    }
    const double dt_sub = dt_step / nsub;
    for (long s = 0; s < nsub; ++s)
      transport_substep(state, sol, bound, dt_sub, rock, fluid);

    state.pressure_bar = sol.pressure_bar;
    prev_fx = std::move(sol.flux_x);
    prev_fy = std::move(sol.flux_y);
    have_prev = true;
    t += dt_step;
  }

  return profile;
}

void write_profile_csv(std::ostream& out, const ProductionProfile& profile) {
  out << "time_days,dt_days";
  for (const auto& id : profile.injector_ids) out << "," << id << "_inj_m3d";
  for (const auto& id : profile.producer_ids)
    out << "," << id << "_oil_m3d," << id << "_water_m3d";
  for (const auto& id : profile.injector_ids) out << "," << id << "_shut";
  for (const auto& id : profile.producer_ids) out << "," << id << "_shut";
  out << "\n";
  char buf[32];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    out << ',' << buf;
  };
  for (const ProfileStep& s : profile.steps) {
    std::snprintf(buf, sizeof(buf), "%.10g", s.t_start_days);
    out << buf;
    put(s.dt_days);
    for (std::size_t k = 0; k < s.injector_water_m3d.size(); ++k)
      put(s.injector_water_m3d[k]);
    for (std::size_t k = 0; k < s.producer_oil_m3d.size(); ++k) {
      put(s.producer_oil_m3d[k]);
      put(s.producer_water_m3d[k]);
    }
    for (auto f : s.shut_in) out << ',' << static_cast<int>(f);
    out << "\n";
  }
}

}  // namespace wellopt
