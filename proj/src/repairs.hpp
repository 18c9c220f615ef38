#pragma once

#include "fitness.hpp"
#include "labeling.hpp"
#include "mesh.hpp"

#include <string>
#include <vector>

namespace polycubify {

struct RepairReport {
  Labeling labeling;
  int targets = 0;      // invalid boundaries or corners found
  int candidates = 0;   // candidate labelings evaluated
  int applied = 0;
  int skipped = 0;
  std::vector<std::string> warnings;
};

/// Band sizes tried by both repairs, in multiples of the average edge length.
inline constexpr double kRepairSizes[] = {1.0, 2.0, 3.0};

/// For each boundary between opposite labels, inserts the fittest band of a
/// third label (on both sides or either side, three widths).
RepairReport repair_opposite_boundary(const SurfaceMesh& mesh, const Labeling& l, const FitnessWeights& w,
                                      int generation = 0);

/// For each corner of valency >= 4, inserts the fittest disk carrying a label
/// absent from its incident charts. Corners with all six labels around are
/// skipped with a warning.
RepairReport repair_high_valency_corner(const SurfaceMesh& mesh, const Labeling& l, const FitnessWeights& w,
                                        int generation = 0);

/// Both repairs in sequence.
Labeling apply_repairs(const SurfaceMesh& mesh, const Labeling& l, const FitnessWeights& w, int generation = 0);

}  // namespace polycubify
