#include "smoothing.hpp"

#include "error.hpp"

namespace polycubify {
namespace {

// Label that at least two foreign neighbors of t share, if any.
bool foreign_majority(const SurfaceMesh& mesh, const Labeling& l, int t, Label& out) {
  const Label own = l[t];
  const auto& nb = mesh.neighbors(t);
  for (int i = 0; i < 3; ++i) {
    const Label li = l[nb[i]];
    if (li == own) continue;
    for (int j = i + 1; j < 3; ++j) {
      if (l[nb[j]] == li) {
        out = li;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

SmoothingReport smooth_boundaries_in_place(const SurfaceMesh& mesh, Labeling& labeling, int generation) {
  if (labeling.size() != mesh.num_triangles()) throw InvalidArgumentError("labeling size does not match mesh");
  SmoothingReport report;
  for (int pass = 0; pass < kMaxSmoothingPasses; ++pass) {
    int changed = 0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
      Label target;
      if (foreign_majority(mesh, labeling, t, target)) {
        labeling.set(t, target, generation);
        ++changed;
      }
    }
    if (changed == 0) {
      report.fixpoint = true;
      return report;
    }
    ++report.passes;
    report.relabeled += changed;
  }
  report.fixpoint = true;
  Label unused;
  for (int t = 0; t < mesh.num_triangles() && report.fixpoint; ++t)
    if (foreign_majority(mesh, labeling, t, unused)) report.fixpoint = false;
  return report;
}

Labeling smooth_boundaries(const SurfaceMesh& mesh, const Labeling& labeling, int generation) {
  Labeling out = labeling;
  smooth_boundaries_in_place(mesh, out, generation);
  return out;
}

}  // namespace polycubify
