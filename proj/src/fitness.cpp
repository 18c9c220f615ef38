#include "fitness.hpp"

#include "distortion.hpp"
#include "error.hpp"
#include "turning_points.hpp"

namespace polycubify {

double combine_fitness(const FitnessValue& f, const FitnessWeights& w) {
  return f.v_p + w.workability * f.e_w + w.fidelity * f.e_f + w.compactness * f.e_c;
}

double fidelity_error(const SurfaceMesh& mesh, const Labeling& labeling) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    sum += mesh.area(t) * (1.0 - mesh.normal(t).dot(direction(labeling[t])));
  return sum / mesh.total_area();
}

int compactness(const ChartGraph& graph) { return graph.num_corners(); }

namespace {

FitnessValue evaluate_with_graph(const SurfaceMesh& mesh, const Labeling& labeling, const ChartGraph& graph,
                                 const FitnessWeights& w, std::optional<FastPolycube>* keep) {
  FitnessValue f;
  f.v_p = validity_proxy(graph);
  f.e_f = fidelity_error(mesh, labeling);
  f.e_c = compactness(graph);
  try {
    FastPolycube pc = fast_surface_polycube(mesh, labeling, graph);
    f.e_w = workability(mesh, pc);
    if (keep) *keep = std::move(pc);
  } catch (const SolveError&) {
    f.e_w = kDistortionClamp;
  }
  f.total = combine_fitness(f, w);
  return f;
}

}  // namespace

FitnessValue evaluate_unsmoothed(const SurfaceMesh& mesh, const Labeling& labeling, const FitnessWeights& w) {
  const ChartGraph graph = extract_charts(mesh, labeling);
  return evaluate_with_graph(mesh, labeling, graph, w, nullptr);
}

FitnessValue smooth_and_evaluate(const SurfaceMesh& mesh, Labeling& labeling, const FitnessWeights& w,
                                 int generation) {
  smooth_boundaries_in_place(mesh, labeling, generation);
  return evaluate_unsmoothed(mesh, labeling, w);
}

FitnessValue evaluate_fitness(const SurfaceMesh& mesh, const Labeling& labeling, const FitnessWeights& w) {
  Labeling copy = labeling;
  return smooth_and_evaluate(mesh, copy, w);
}

FitnessReport fitness_report(const SurfaceMesh& mesh, const Labeling& labeling, const FitnessWeights& w) {
  FitnessReport r;
  Labeling smoothed = labeling;
  r.smoothing = smooth_boundaries_in_place(mesh, smoothed, 0);
  const ChartGraph graph = extract_charts(mesh, smoothed);
  r.fitness = evaluate_with_graph(mesh, smoothed, graph, w, &r.polycube);
  r.polycube_failed = !r.polycube.has_value();
  if (r.polycube) {
    r.d_a = area_distortion(mesh, *r.polycube);
    r.polycube_residual = r.polycube->residual;
  } else {
    r.d_a = kDistortionClamp;
  }
  r.charts = graph.num_charts();
  r.boundaries = graph.num_boundaries();
  r.corners = graph.num_corners();
  r.turning_points = detect_turning_points(mesh, graph).count();
  r.validity = validity_breakdown(graph);
  for (int c = 0; c < graph.num_charts(); ++c) {
    ChartStats s;
    s.id = c;
    s.label = graph.charts[c].label;
    s.triangles = static_cast<int>(graph.charts[c].triangles.size());
    for (int t : graph.charts[c].triangles) s.area += mesh.area(t);
    s.neighbors = static_cast<int>(graph.charts[c].neighbors.size());
    r.chart_stats.push_back(s);
  }
  return r;
}

}  // namespace polycubify
