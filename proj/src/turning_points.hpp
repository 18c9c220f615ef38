#pragma once

#include "chart_graph.hpp"
#include "mesh.hpp"

#include <span>
#include <vector>

namespace polycubify {

// Two-label edge-chain energy used to find where a boundary reverses its
// direction along the axis orthogonal to both of its charts.

/// Unary cost of giving `label` (0 or 1) to an edge whose normalized
/// direction has dot product `dot` with the boundary axis.
double turning_unary(double dot, int label);

/// Cost of a label switch between consecutive normalized edges.
double turning_switch_cost(const Vec3& e1, const Vec3& e2);

struct ChainSolution {
  std::vector<int> labels;  // 0 or 1 per edge
  double energy = 0.0;
};

/// Exact minimizer of the two-label chain (or cycle, when `closed`) energy by
/// dynamic programming. Ties prefer label 0, then fewer switches.
ChainSolution solve_edge_chain(std::span<const Vec3> edge_dirs, const Vec3& axis, bool closed);

/// Edge-chain energy of a given binary labeling.
double edge_chain_energy(std::span<const Vec3> edge_dirs, const Vec3& axis, bool closed,
                         std::span<const int> labels);

/// Axis orthogonal to both labels' axes, signed as direction(left) x direction(right).
Vec3 boundary_axis(Label left, Label right);

struct TurningPointSet {
  std::vector<std::vector<int>> per_boundary;  // vertex ids in traversal order

  int count() const {
    int n = 0;
    for (const auto& tps : per_boundary) n += static_cast<int>(tps.size());
    return n;
  }
};

/// Boundaries whose charts share an axis get no turning points.
TurningPointSet detect_turning_points(const SurfaceMesh& mesh, const ChartGraph& graph);

}  // namespace polycubify
