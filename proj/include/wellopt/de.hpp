#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "wellopt/econ.hpp"
#include "wellopt/rng.hpp"

namespace wellopt {

struct ProblemBounds {
  std::vector<double> lower;
  std::vector<double> upper;

  int dim() const { return static_cast<int>(lower.size()); }
  void validate() const;  // lower[j] < upper[j] for all j
};

enum class MutationStrategy { kRand1, kCurrentToBest1 };

struct DEConfig {
  int population_size = 100;
  double mutation_factor = 0.5;     // F in [0, 2]
  double crossover_prob = 0.9;      // CR in [0, 1]
  MutationStrategy strategy = MutationStrategy::kRand1;
  long budget = 10000;              // max objective evaluations
  std::uint64_t seed = 42;
  // When false, evaluations returning -inf do not consume budget (the run is
  // still capped at 100x budget total invocations as a guard).
  bool charge_penalized_evals = true;
  int eval_threads = 1;  // parallel offspring evaluations per generation

  void validate() const;
};

// Fitness is maximized; unset until evaluated.
struct Candidate {
  std::vector<double> x;
  std::optional<Money> fitness;
};

struct RunHistory {
  std::vector<double> best_so_far;   // one entry per evaluator invocation
  std::vector<double> generation_best;           // entry 0: initial population
  std::vector<double> generation_mean_feasible;  // NaN when none feasible
  long evaluations = 0;                          // evaluator invocations
  std::vector<Candidate> final_population;
};

using Evaluator = std::function<Money(std::span<const double>)>;
using GenerationHook =
    std::function<void(int generation, std::span<const Candidate> population)>;

// N candidates with every component uniform in [lower[j], upper[j]];
// fitness unset. Draws are candidate-major, component-minor.
std::vector<Candidate> init_population(const ProblemBounds& bounds, int n,
                                       UniformStream& rng);

// rand/1: v = x_r1 + F (x_r2 - x_r3), r1, r2, r3 distinct from each other
// and from target. Indices drawn by rejection, in that order.
std::vector<double> mutate_rand1(std::span<const Candidate> population,
                                 int target, double mutation_factor,
                                 UniformStream& rng);

// current-to-best/1: v = x_i + F (x_best - x_i) + F (x_r1 - x_r2) with
// r1, r2 distinct from each other, the target, and best.
std::vector<double> mutate_current_to_best1(
    std::span<const Candidate> population, int target, int best,
    double mutation_factor, UniformStream& rng);

// Binomial crossover: draws j_rand uniform in [1, D], then one U(0,1) per
// component; u_j = v_j when U <= CR or j == j_rand, else parent_j.
std::vector<double> binomial_crossover(std::span<const double> parent,
                                       std::span<const double> mutant,
                                       double crossover_prob,
                                       UniformStream& rng);

void clamp_to_bounds(std::span<double> x, const ProblemBounds& bounds);

// Offspring survives only on strict improvement (maximization); both
// fitnesses must be set (-inf allowed).
const Candidate& select(const Candidate& parent, const Candidate& offspring);

// argmax fitness, ties broken by lowest index; every member must be
// evaluated.
int argmax_fitness(std::span<const Candidate> population);

// Generation-synchronous DE loop. All of a generation's random draws happen
// before any offspring evaluation, so evaluations may run on
// config.eval_threads threads with results identical to sequential order.
// Stops once the budget is exhausted (mid-generation: remaining offspring
// are not evaluated and their parents survive). Returns the best candidate
// over all evaluated points plus the full history. Deterministic for fixed
// (config, evaluator).
std::pair<Candidate, RunHistory> run_de(const DEConfig& config,
                                        const ProblemBounds& bounds,
                                        const Evaluator& evaluate,
                                        const GenerationHook& on_generation = {});

}  // namespace wellopt
