#pragma once

#include "labeling.hpp"
#include "mesh.hpp"

namespace polycubify {

inline constexpr int kMaxSmoothingPasses = 10;

struct SmoothingReport {
  int passes = 0;      // passes that relabeled at least one triangle
  int relabeled = 0;   // total relabel operations
  bool fixpoint = false;
};

/// Relabels, in triangle order, every triangle that has two neighbors across
/// chart-boundary edges carrying the same foreign label. Repeats until
/// nothing changes or the pass cap is hit. Relabeled triangles get `generation`.
SmoothingReport smooth_boundaries_in_place(const SurfaceMesh& mesh, Labeling& labeling, int generation = 0);

Labeling smooth_boundaries(const SurfaceMesh& mesh, const Labeling& labeling, int generation = 0);

}  // namespace polycubify
