#pragma once

#include "evolution.hpp"
#include "initial_labeling.hpp"
#include "labeling.hpp"
#include "mesh.hpp"

#include <optional>

namespace polycubify {

struct OptimizeOptions {
  GAConfig ga;
  double ratio = kDefaultUnaryBinaryRatio;
  bool allow_retry = true;
};

struct StageTimings {
  double init_seconds = 0.0;
  double evolve_seconds = 0.0;
  double retry_seconds = 0.0;
  double total_seconds = 0.0;
};

struct AttemptHistory {
  double ratio = 0.0;  // 0 when the initial labeling was supplied
  std::vector<GenerationRecord> generations;
  int generations_run = 0;
  bool stalled = false;
  FitnessValue final_fitness;
};

struct OptimizeResult {
  Individual best;
  std::vector<AttemptHistory> attempts;
  bool retried = false;
  StageTimings timings;
};

/// Graph-cut initialization (unless `init` is given) followed by evolution.
/// When no initial labeling was supplied and the result is not pseudo-valid,
/// restarts once from an initialization with a third of the ratio and keeps
/// the better of the two results, pseudo-valid ones first.
OptimizeResult optimize(const SurfaceMesh& mesh, const std::optional<Labeling>& init, const OptimizeOptions& opts,
                        const GenerationCallback& on_generation = {});

}  // namespace polycubify
