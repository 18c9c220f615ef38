#include "initial_labeling.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>

namespace polycubify {

double labeling_unary(const SurfaceMesh& mesh, int t, Label l, double ratio) {
  const double misalignment = std::max(0.0, 1.0 - mesh.normal(t).dot(direction(l)));
  return ratio * mesh.area(t) / mesh.average_area() * misalignment;
}

double labeling_pairwise_weight(const Vec3& n1, const Vec3& n2) {
  const double s = (n1.dot(n2) - 1.0) / 0.25;
  return std::exp(-0.5 * s * s);
}

MultiLabelProblem build_labeling_problem(const SurfaceMesh& mesh, double ratio) {
  if (!(ratio > 0.0) || !std::isfinite(ratio)) throw InvalidArgumentError("unary/binary ratio must be positive");
  MultiLabelProblem p(mesh.num_triangles(), kNumLabels);
  for (int t = 0; t < mesh.num_triangles(); ++t)
    for (Label l : kAllLabels) p.unary_at(t, code(l)) = labeling_unary(mesh, t, l, ratio);
  p.pairwise.reserve(mesh.num_edges());
  for (const MeshEdge& e : mesh.edges())
    p.add_pairwise(e.t0, e.t1, labeling_pairwise_weight(mesh.normal(e.t0), mesh.normal(e.t1)));
  return p;
}

Labeling graphcut_initial_labeling(const SurfaceMesh& mesh, double ratio) {
  const MultiLabelProblem p = build_labeling_problem(mesh, ratio);
  const Labeling naive = naive_normal_labeling(mesh);
  std::vector<int> init(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) init[t] = code(naive[t]);
  const ExpansionResult r = solve_alpha_expansion(p, std::move(init));
  std::vector<Label> labels(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) labels[t] = label_from_code(r.labels[t]);
  return Labeling(std::move(labels));
}

}  // namespace polycubify
