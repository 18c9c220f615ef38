#include "evolution.hpp"

#include "chart_graph.hpp"
#include "error.hpp"
#include "mutations.hpp"
#include "repairs.hpp"
#include "turning_points.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace polycubify {

void GAConfig::validate() const {
  if (population < 1) throw InvalidArgumentError("population must be >= 1");
  if (crossovers < 0) throw InvalidArgumentError("crossovers must be >= 0");
  if (generations < 1) throw InvalidArgumentError("generations must be >= 1");
  if (stall_limit < 1) throw InvalidArgumentError("stall limit must be >= 1");
  if (archive_capacity < 1) throw InvalidArgumentError("archive size must be >= 1");
  if (threads < 0) throw InvalidArgumentError("threads must be >= 0");
  if (weights.workability < 0 || weights.fidelity < 0 || weights.compactness < 0)
    throw InvalidArgumentError("fitness weights must be non-negative");
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, count);
  std::vector<std::exception_ptr> errors(count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
      pool.emplace_back([&] {
        for (int i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

namespace {

Individual make_individual(const SurfaceMesh& mesh, Labeling labeling, const FitnessWeights& w, int generation,
                           std::int64_t lineage) {
  Individual ind;
  ind.fitness = smooth_and_evaluate(mesh, labeling, w, generation);
  ind.labeling = std::move(labeling);
  ind.birth_generation = generation;
  ind.lineage = lineage;
  return ind;
}

GenerationRecord record(int generation, const Archive& archive, int accepted) {
  return {generation, archive.best().fitness, archive.size(), accepted};
}

}  // namespace

GenerationRecord run_generation(Archive& archive, const GAConfig& cfg, int generation, const SurfaceMesh& mesh) {
  if (archive.empty()) throw EmptyArchiveError("cannot run a generation on an empty archive");
  const int n = cfg.population;
  const std::int64_t lineage_base = static_cast<std::int64_t>(generation) * (n + cfg.crossovers + 1);

  std::vector<Individual> mutants(n);
  parallel_for(n, cfg.threads, [&](int slot) {
    Rng rng = make_stream(cfg.seed, generation, slot);
    const Individual& parent = select_from_archive(archive, rng);
    const ChartGraph graph = extract_charts(mesh, parent.labeling);
    const TurningPointSet tps = detect_turning_points(mesh, graph);
    MutationResult m = random_mutation(mesh, parent.labeling, graph, tps, rng, generation);
    mutants[slot] = make_individual(mesh, std::move(m.labeling), cfg.weights, generation, lineage_base + slot);
  });

  // Crossover parents come from the new mutants and the archive, ranked together.
  std::vector<const Individual*> pool;
  for (const Individual& e : archive.entries()) pool.push_back(&e);
  for (const Individual& m : mutants) pool.push_back(&m);
  std::stable_sort(pool.begin(), pool.end(),
                   [](const Individual* a, const Individual* b) { return a->fitness.total < b->fitness.total; });

  std::vector<Individual> children;
  if (pool.size() >= 2 && cfg.crossovers > 0) {
    Rng rng = make_stream(cfg.seed, generation, static_cast<std::uint64_t>(n));
    std::vector<std::pair<int, int>> parents(cfg.crossovers);
    const int pn = static_cast<int>(pool.size());
    for (auto& pr : parents) {
      pr.first = select_rank(pn, rng);
      do {
        pr.second = select_rank(pn, rng);
      } while (pr.second == pr.first);
    }
    children.resize(cfg.crossovers);
    parallel_for(cfg.crossovers, cfg.threads, [&](int k) {
      Labeling child = crossover(pool[parents[k].first]->labeling, pool[parents[k].second]->labeling);
      children[k] = make_individual(mesh, std::move(child), cfg.weights, generation, lineage_base + n + k);
    });
  }

  int accepted = 0;
  for (Individual& m : mutants) accepted += archive.offer(std::move(m));
  for (Individual& c : children) accepted += archive.offer(std::move(c));
  return record(generation, archive, accepted);
}

EvolutionResult run_evolution(const SurfaceMesh& mesh, const Labeling& init, const GAConfig& cfg,
                              const GenerationCallback& on_generation) {
  cfg.validate();
  if (init.size() != mesh.num_triangles()) throw InvalidArgumentError("initial labeling does not match the mesh");

  Archive archive(cfg.archive_capacity);
  const Labeling repaired = apply_repairs(mesh, init, cfg.weights, 0);
  archive.offer(make_individual(mesh, repaired, cfg.weights, 0, 0));

  EvolutionResult result;
  result.history.push_back(record(0, archive, 1));
  if (on_generation) on_generation(result.history.back());

  int stall = 0;
  int gen = 0;
  for (gen = 1; gen <= cfg.generations; ++gen) {
    const std::uint64_t digest_before = archive.best().labeling.digest();
    const double total_before = archive.best().fitness.total;
    result.history.push_back(run_generation(archive, cfg, gen, mesh));
    if (on_generation) on_generation(result.history.back());
    const bool unchanged =
        archive.best().labeling.digest() == digest_before && archive.best().fitness.total == total_before;
    stall = unchanged ? stall + 1 : 0;
    if (stall >= cfg.stall_limit) {
      result.stalled = true;
      break;
    }
  }
  result.generations_run = std::min(gen, cfg.generations);

  const Individual& best = archive.best();
  const int last = result.generations_run;
  Labeling final_labeling = apply_repairs(mesh, best.labeling, cfg.weights, last);
  if (final_labeling.same_labels(best.labeling))
    result.best = best;
  else
    result.best = make_individual(mesh, std::move(final_labeling), cfg.weights, last, best.lineage);
  return result;
}

}  // namespace polycubify
