#pragma once

#include "archive.hpp"
#include "fitness.hpp"
#include "mesh.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace polycubify {

struct GAConfig {
  int population = 100;  // mutants per generation
  int crossovers = 10;
  int generations = 40;
  int stall_limit = 3;
  int archive_capacity = kDefaultArchiveCapacity;
  FitnessWeights weights;
  std::uint64_t seed = 0;
  int threads = 0;  // 0: hardware concurrency

  /// Throws InvalidArgumentError.
  void validate() const;
};

struct GenerationRecord {
  int generation = 0;
  FitnessValue best;
  int archive_size = 0;
  int accepted = 0;  // new individuals that entered the archive
};

/// Mutates, evaluates and crosses one generation, then offers every new
/// individual to the archive in slot order. `generation` is 1-based and is
/// the stamp given to relabeled triangles.
GenerationRecord run_generation(Archive& archive, const GAConfig& cfg, int generation, const SurfaceMesh& mesh);

struct EvolutionResult {
  Individual best;
  std::vector<GenerationRecord> history;  // row 0 is the repaired initial solution
  int generations_run = 0;
  bool stalled = false;
};

using GenerationCallback = std::function<void(const GenerationRecord&)>;

/// Repairs and seeds with `init`, evolves until the generation cap or a
/// stall, then repairs the best individual.
EvolutionResult run_evolution(const SurfaceMesh& mesh, const Labeling& init, const GAConfig& cfg,
                              const GenerationCallback& on_generation = {});

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Rethrows the
/// exception of the lowest failing index.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace polycubify
