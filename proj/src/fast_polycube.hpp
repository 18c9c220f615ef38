#pragma once

#include "chart_graph.hpp"
#include "mesh.hpp"

#include <array>
#include <span>
#include <vector>

namespace polycubify {

/// Variable layout of the per-axis least-squares problems.
///
/// On axis a every vertex maps to one variable. Vertices of a chart whose
/// label lies on axis a share that chart's variable; charts on the same axis
/// that touch at a vertex end up sharing one variable.
struct PolycubeVariables {
  struct Axis {
    std::vector<int> var_of_vertex;
    std::vector<double> input_value;  // starting / pinned value per variable
    std::vector<int> pinned;          // one pinned variable per connected component
    int num_vars = 0;
  };
  std::array<Axis, 3> axes;
  std::vector<int> chart_var;  // variable of each chart on its own axis
};

PolycubeVariables build_polycube_variables(const SurfaceMesh& mesh, const ChartGraph& graph);

/// Sum over edges and axes of (x_i - x_j - (p_i - p_j))^2.
double polycube_objective(const SurfaceMesh& mesh, std::span<const Vec3> positions);

struct FastPolycube {
  std::vector<Vec3> positions;
  std::vector<double> chart_coordinate;  // per chart, along its label axis
  std::vector<Label> triangle_labels;
  double residual = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

inline constexpr int kPolycubeMaxIterations = 5000;

/// Throws SolveError if the iteration cap is hit with gradient norm above
/// 1e-4, unless `strict` is false.
FastPolycube fast_surface_polycube(const SurfaceMesh& mesh, const Labeling& labeling, const ChartGraph& graph,
                                   bool strict = true);

}  // namespace polycubify
