#include "pipeline.hpp"

#include "error.hpp"

#include <chrono>

namespace polycubify {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

AttemptHistory summarize(const EvolutionResult& r, double ratio) {
  AttemptHistory h;
  h.ratio = ratio;
  h.generations = r.history;
  h.generations_run = r.generations_run;
  h.stalled = r.stalled;
  h.final_fitness = r.best.fitness;
  return h;
}

}  // namespace

OptimizeResult optimize(const SurfaceMesh& mesh, const std::optional<Labeling>& init, const OptimizeOptions& opts,
                        const GenerationCallback& on_generation) {
  opts.ga.validate();
  if (!(opts.ratio > 0.0)) throw InvalidArgumentError("ratio must be positive");
  const auto start = Clock::now();
  OptimizeResult out;

  auto t = Clock::now();
  const Labeling first_init = init ? *init : graphcut_initial_labeling(mesh, opts.ratio);
  out.timings.init_seconds = seconds_since(t);

  t = Clock::now();
  EvolutionResult first = run_evolution(mesh, first_init, opts.ga, on_generation);
  out.timings.evolve_seconds = seconds_since(t);
  out.attempts.push_back(summarize(first, init ? 0.0 : opts.ratio));
  out.best = std::move(first.best);

  if (!init && opts.allow_retry && out.best.fitness.v_p > 0) {
    t = Clock::now();
    const double ratio = opts.ratio / 3.0;
    const Labeling second_init = graphcut_initial_labeling(mesh, ratio);
    EvolutionResult second = run_evolution(mesh, second_init, opts.ga, on_generation);
    out.attempts.push_back(summarize(second, ratio));
    out.retried = true;
    const FitnessValue& a = out.best.fitness;
    const FitnessValue& b = second.best.fitness;
    const bool better = (b.v_p == 0) != (a.v_p == 0) ? b.v_p == 0 : b.total < a.total;
    if (better) out.best = std::move(second.best);
    out.timings.retry_seconds = seconds_since(t);
  }
  out.timings.total_seconds = seconds_since(start);
  return out;
}

}  // namespace polycubify
