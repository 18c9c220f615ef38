#include "repairs.hpp"

#include "chart_graph.hpp"
#include "surface_band.hpp"

#include <algorithm>
#include <limits>

namespace polycubify {
namespace {

struct Candidate {
  Labeling labeling;
  double total = std::numeric_limits<double>::infinity();
};

void consider(const SurfaceMesh& mesh, const Labeling& base, const std::vector<int>& region, Label label,
              const FitnessWeights& w, int generation, RepairReport& report, Candidate& best) {
  Labeling cand = base;
  for (int t : region) cand.set(t, label, generation);
  ++report.candidates;
  const double total = evaluate_fitness(mesh, cand, w).total;
  if (total < best.total) {
    best.total = total;
    best.labeling = std::move(cand);
  }
}

}  // namespace

RepairReport repair_opposite_boundary(const SurfaceMesh& mesh, const Labeling& l, const FitnessWeights& w,
                                      int generation) {
  RepairReport report;
  report.labeling = l;
  const ChartGraph graph = extract_charts(mesh, l);

  struct Target {
    std::vector<int> path;
    std::vector<int> edges;
    std::vector<char> left_mask, right_mask, both_mask;
    Label left, right;
  };
  std::vector<Target> targets;
  for (const Boundary& b : graph.boundaries) {
    if (!graph.is_opposite(b)) continue;
    Target t;
    t.path = b.vertices;
    if (b.closed) t.path.push_back(b.vertices.front());
    t.edges = b.edges;
    t.left = graph.left_label(b);
    t.right = graph.right_label(b);
    t.left_mask.assign(mesh.num_triangles(), 0);
    t.right_mask.assign(mesh.num_triangles(), 0);
    for (int tri : graph.charts[b.left_chart].triangles) t.left_mask[tri] = 1;
    for (int tri : graph.charts[b.right_chart].triangles) t.right_mask[tri] = 1;
    t.both_mask = t.left_mask;
    for (int k = 0; k < mesh.num_triangles(); ++k) t.both_mask[k] |= t.right_mask[k];
    targets.push_back(std::move(t));
  }
  report.targets = static_cast<int>(targets.size());

  const double lavg = mesh.average_edge_length();
  for (const Target& target : targets) {
    const Labeling& cur = report.labeling;
    // An earlier insertion may already have separated these charts.
    bool still_invalid = false;
    for (int e : target.edges) {
      const MeshEdge& edge = mesh.edge(e);
      if (opposite(cur[edge.t0]) == cur[edge.t1]) still_invalid = true;
    }
    if (!still_invalid) {
      ++report.skipped;
      continue;
    }
    Candidate best;
    for (const std::vector<char>* mask : {&target.both_mask, &target.left_mask, &target.right_mask})
      for (Label label : kAllLabels) {
        if (axis(label) == axis(target.left)) continue;
        for (double size : kRepairSizes) {
          const std::vector<int> region = surface_band(mesh, target.path, size * lavg, *mask);
          consider(mesh, cur, region, label, w, generation, report, best);
        }
      }
    report.labeling = std::move(best.labeling);
    ++report.applied;
  }
  return report;
}

RepairReport repair_high_valency_corner(const SurfaceMesh& mesh, const Labeling& l, const FitnessWeights& w,
                                        int generation) {
  RepairReport report;
  report.labeling = l;
  std::vector<int> corners;
  {
    const ChartGraph graph = extract_charts(mesh, l);
    for (const Corner& c : graph.corners)
      if (c.valency >= 4) corners.push_back(c.vertex);
  }
  report.targets = static_cast<int>(corners.size());

  const double lavg = mesh.average_edge_length();
  for (int v : corners) {
    const Labeling& cur = report.labeling;
    if (report.applied > 0) {
      const ChartGraph graph = extract_charts(mesh, cur);
      if (graph.valency[v] < 4) {
        ++report.skipped;
        continue;
      }
    }
    bool present[kNumLabels] = {};
    for (int t : mesh.vertex_triangles(v)) present[code(cur[t])] = true;
    std::vector<Label> remaining;
    for (Label label : kAllLabels)
      if (!present[code(label)]) remaining.push_back(label);
    if (remaining.empty()) {
      ++report.skipped;
      report.warnings.push_back("corner at vertex " + std::to_string(v) +
                                " touches all six labels; left for mutations");
      continue;
    }
    const int path[] = {v};
    Candidate best;
    for (Label label : remaining)
      for (double size : kRepairSizes) {
        const std::vector<int> region = surface_band(mesh, path, size * lavg);
        consider(mesh, cur, region, label, w, generation, report, best);
      }
    report.labeling = std::move(best.labeling);
    ++report.applied;
  }
  return report;
}

Labeling apply_repairs(const SurfaceMesh& mesh, const Labeling& l, const FitnessWeights& w, int generation) {
  Labeling out = repair_opposite_boundary(mesh, l, w, generation).labeling;
  return repair_high_valency_corner(mesh, out, w, generation).labeling;
}

}  // namespace polycubify
