#include "wellopt/de.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace wellopt {

void ProblemBounds::validate() const {
  if (lower.empty() || lower.size() != upper.size())
    throw std::invalid_argument("bounds: lower/upper must be non-empty and equal length");
  for (std::size_t j = 0; j < lower.size(); ++j)
    if (!(lower[j] < upper[j]))
      throw std::invalid_argument("bounds: lower must be < upper (component " +
                                  std::to_string(j) + ")");
}

void DEConfig::validate() const {
  if (population_size < 4)
    throw std::invalid_argument("de config: population size must be >= 4");
  if (mutation_factor < 0.0 || mutation_factor > 2.0)
    throw std::invalid_argument("de config: F must lie in [0, 2]");
  if (crossover_prob < 0.0 || crossover_prob > 1.0)
    throw std::invalid_argument("de config: CR must lie in [0, 1]");
  if (budget < population_size)
    throw std::invalid_argument(
        "de config: budget must cover the initial population");
  if (eval_threads < 1)
    throw std::invalid_argument("de config: eval_threads must be >= 1");
}

std::vector<Candidate> init_population(const ProblemBounds& bounds, int n,
                                       UniformStream& rng) {
  bounds.validate();
  if (n < 4) throw std::invalid_argument("init_population: n must be >= 4");
  const int dim = bounds.dim();
  std::vector<Candidate> population(n);
  for (Candidate& c : population) {
    c.x.resize(dim);
    for (int j = 0; j < dim; ++j)
      c.x[j] = bounds.lower[j] +
               rng.next_u01() * (bounds.upper[j] - bounds.lower[j]);
  }
  return population;
}

namespace {

int draw_distinct(UniformStream& rng, int n,
                  std::initializer_list<int> exclude) {
  int r;
  do {
    r = rng.next_int(0, n - 1);
  } while (std::find(exclude.begin(), exclude.end(), r) != exclude.end());
  return r;
}

}  // namespace

std::vector<double> mutate_rand1(std::span<const Candidate> population,
                                 int target, double mutation_factor,
                                 UniformStream& rng) {
  const int n = static_cast<int>(population.size());
  if (n < 4) throw std::invalid_argument("mutate_rand1: needs N >= 4");
  const int r1 = draw_distinct(rng, n, {target});
  const int r2 = draw_distinct(rng, n, {target, r1});
  const int r3 = draw_distinct(rng, n, {target, r1, r2});
  const auto& a = population[r1].x;
  const auto& b = population[r2].x;
  const auto& c = population[r3].x;
  std::vector<double> v(a.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = a[j] + mutation_factor * (b[j] - c[j]);
  return v;
}

std::vector<double> mutate_current_to_best1(
    std::span<const Candidate> population, int target, int best,
    double mutation_factor, UniformStream& rng) {
  const int n = static_cast<int>(population.size());
  const int excluded = target == best ? 1 : 2;
  if (n - excluded < 2)
    throw std::invalid_argument(
        "mutate_current_to_best1: population too small for distinct donors");
  const int r1 = draw_distinct(rng, n, {target, best});
  const int r2 = draw_distinct(rng, n, {target, best, r1});
  const auto& xi = population[target].x;
  const auto& xb = population[best].x;
  const auto& a = population[r1].x;
  const auto& b = population[r2].x;
  std::vector<double> v(xi.size());
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = xi[j] + mutation_factor * (xb[j] - xi[j]) +
           mutation_factor * (a[j] - b[j]);
  return v;
}

std::vector<double> binomial_crossover(std::span<const double> parent,
                                       std::span<const double> mutant,
                                       double crossover_prob,
                                       UniformStream& rng) {
  if (parent.size() != mutant.size())
    throw std::invalid_argument("crossover: vector length mismatch");
  const int dim = static_cast<int>(parent.size());
  const int j_rand = rng.next_int(1, dim);  // 1-based, as in the update rule
  std::vector<double> u(dim);
  for (int j = 0; j < dim; ++j) {
    const bool take_mutant = rng.next_u01() <= crossover_prob || j + 1 == j_rand;
    u[j] = take_mutant ? mutant[j] : parent[j];
  }
  return u;
}

void clamp_to_bounds(std::span<double> x, const ProblemBounds& bounds) {
  if (x.size() != bounds.lower.size())
    throw std::invalid_argument("clamp: dimension mismatch");
  for (std::size_t j = 0; j < x.size(); ++j)
    x[j] = std::clamp(x[j], bounds.lower[j], bounds.upper[j]);
}

const Candidate& select(const Candidate& parent, const Candidate& offspring) {
  if (!parent.fitness || !offspring.fitness)
    throw std::invalid_argument("select: both candidates must be evaluated");
  return *offspring.fitness > *parent.fitness ? offspring : parent;
}

int argmax_fitness(std::span<const Candidate> population) {
  if (population.empty())
    throw std::invalid_argument("argmax_fitness: empty population");
  int best = 0;
  for (int i = 1; i < static_cast<int>(population.size()); ++i) {
    if (!population[i].fitness)
      throw std::invalid_argument("argmax_fitness: unevaluated candidate");
    if (*population[i].fitness > *population[best].fitness) best = i;
  }
  return best;
}

namespace {

// Evaluates candidates[first..last) on up to n_threads threads. Each slot is
// written exactly once, so the result is identical to the sequential order.
void evaluate_batch(std::vector<Candidate>& candidates, std::size_t first,
                    std::size_t last, const Evaluator& evaluate,
                    int n_threads) {
  const std::size_t count = last - first;
  const int workers =
      std::max(1, std::min<int>(n_threads, static_cast<int>(count)));
  if (workers == 1) {
    for (std::size_t k = first; k < last; ++k)
      candidates[k].fitness = evaluate(candidates[k].x);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::exception_ptr error;
  std::mutex error_mutex;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = first + count * w / workers;
    const std::size_t hi = first + count * (w + 1) / workers;
    pool.emplace_back([&, lo, hi] {
      try {
        for (std::size_t k = lo; k < hi; ++k)
          candidates[k].fitness = evaluate(candidates[k].x);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::pair<Candidate, RunHistory> run_de(const DEConfig& config,
                                        const ProblemBounds& bounds,
                                        const Evaluator& evaluate,
                                        const GenerationHook& on_generation) {
  config.validate();
  bounds.validate();
  if (!evaluate) throw std::invalid_argument("run_de: evaluator required");

  const int n = config.population_size;
  RngStream rng(config.seed);
  RunHistory history;
  Candidate best;

  long charged = 0;      // evaluations counted against the budget
  long invocations = 0;  // all evaluator calls
  // uncharged-penalties mode still terminates on pathological all-infeasible
  // problems via this cap
  const long invocation_cap = config.charge_penalized_evals
                                  ? config.budget
                                  : config.budget * 100;

  auto note_evaluated = [&](const Candidate& c) {
    ++invocations;
    if (config.charge_penalized_evals || std::isfinite(*c.fitness)) ++charged;
    history.evaluations += 1;
    if (best.x.empty() || *c.fitness > *best.fitness) best = c;
    history.best_so_far.push_back(*best.fitness);
  };

  auto record_generation = [&](std::span<const Candidate> pop, int gen) {
    double gen_best = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    long feasible = 0;
    for (const Candidate& c : pop) {
      gen_best = std::max(gen_best, *c.fitness);
      if (std::isfinite(*c.fitness)) {
        sum += *c.fitness;
        ++feasible;
      }
    }
    history.generation_best.push_back(gen_best);
    history.generation_mean_feasible.push_back(
        feasible > 0 ? sum / feasible
                     : std::numeric_limits<double>::quiet_NaN());
    if (on_generation) on_generation(gen, pop);
  };

  std::vector<Candidate> population = init_population(bounds, n, rng);
  evaluate_batch(population, 0, population.size(), evaluate,
                 config.eval_threads);
  for (const Candidate& c : population) note_evaluated(c);
  int generation = 0;
  record_generation(population, generation);

  std::vector<Candidate> offspring(n);
  while (charged < config.budget && invocations < invocation_cap) {
    ++generation;
    const int best_index = argmax_fitness(population);

    // all stochastic decisions for the generation happen here, up front
    for (int i = 0; i < n; ++i) {
      std::vector<double> mutant =
          config.strategy == MutationStrategy::kRand1
              ? mutate_rand1(population, i, config.mutation_factor, rng)
              : mutate_current_to_best1(population, i, best_index,
                                        config.mutation_factor, rng);
      offspring[i].x = binomial_crossover(population[i].x, mutant,
                                          config.crossover_prob, rng);
      clamp_to_bounds(offspring[i].x, bounds);
      offspring[i].fitness.reset();
    }

    long evaluated = 0;
    if (config.charge_penalized_evals) {
      evaluated = std::min<long>(n, config.budget - charged);
      evaluate_batch(offspring, 0, static_cast<std::size_t>(evaluated),
                     evaluate, config.eval_threads);
      for (long i = 0; i < evaluated; ++i) note_evaluated(offspring[i]);
    } else {
      // exact accounting needs the outcome of each call, so run serially
      while (evaluated < n && charged < config.budget &&
             invocations < invocation_cap) {
        offspring[evaluated].fitness = evaluate(offspring[evaluated].x);
        note_evaluated(offspring[evaluated]);
        ++evaluated;
      }
    }
    for (long i = 0; i < evaluated; ++i)
      if (*offspring[i].fitness > *population[i].fitness)
        population[i] = std::move(offspring[i]);
    record_generation(population, generation);
  }

  history.final_population = std::move(population);
  return {std::move(best), std::move(history)};
}

}  // namespace wellopt
