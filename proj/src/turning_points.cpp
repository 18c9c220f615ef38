#include "turning_points.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace polycubify {

double turning_unary(double dot, int label) {
  const bool penalized = label == 0 ? dot < 0.0 : dot > 0.0;
  if (!penalized) return 0.0;
  const double s = dot / 0.9;
  return 1.0 - std::exp(-0.5 * s * s);
}

double turning_switch_cost(const Vec3& e1, const Vec3& e2) {
  const double d = e1.dot(e2) - 1.0;
  return std::exp(-0.5 * d * d);
}

double edge_chain_energy(std::span<const Vec3> edge_dirs, const Vec3& axis, bool closed,
                         std::span<const int> labels) {
  const std::size_t n = edge_dirs.size();
  double energy = 0.0;
  for (std::size_t i = 0; i < n; ++i) energy += turning_unary(edge_dirs[i].dot(axis), labels[i]);
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (labels[i] != labels[i + 1]) energy += turning_switch_cost(edge_dirs[i], edge_dirs[i + 1]);
  if (closed && n > 1 && labels[n - 1] != labels[0]) energy += turning_switch_cost(edge_dirs[n - 1], edge_dirs[0]);
  return energy;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Viterbi over a chain; `first_label` >= 0 pins edge 0 (used for cycles).
// Returns the labels and the energy including the closing term when `closed`.
ChainSolution viterbi(std::span<const Vec3> dirs, const Vec3& axis, bool closed, int first_label) {
  const std::size_t n = dirs.size();
  std::vector<std::array<double, 2>> cost(n);
  std::vector<std::array<int, 2>> back(n);
  for (int l = 0; l < 2; ++l) {
    cost[0][l] = (first_label >= 0 && l != first_label) ? kInf : turning_unary(dirs[0].dot(axis), l);
    back[0][l] = -1;
  }
  for (std::size_t i = 1; i < n; ++i) {
    const double sw = turning_switch_cost(dirs[i - 1], dirs[i]);
    const double unary[2] = {turning_unary(dirs[i].dot(axis), 0), turning_unary(dirs[i].dot(axis), 1)};
    for (int l = 0; l < 2; ++l) {
      // Staying on the same label wins ties (fewer switches).
      const double stay = cost[i - 1][l];
      const double move = cost[i - 1][1 - l] + sw;
      if (stay <= move) {
        cost[i][l] = stay + unary[l];
        back[i][l] = l;
      } else {
        cost[i][l] = move + unary[l];
        back[i][l] = 1 - l;
      }
    }
  }
  std::array<double, 2> total = cost[n - 1];
  if (closed && n > 1 && first_label >= 0) {
    const double sw = turning_switch_cost(dirs[n - 1], dirs[0]);
    total[1 - first_label] += sw;
  }
  int last = 0;
  if (total[1] < total[0]) last = 1;

  ChainSolution sol;
  sol.energy = total[last];
  sol.labels.assign(n, 0);
  int l = last;
  for (std::size_t i = n; i-- > 0;) {
    sol.labels[i] = l;
    l = back[i][l];
  }
  return sol;
}

}  // namespace

ChainSolution solve_edge_chain(std::span<const Vec3> edge_dirs, const Vec3& axis, bool closed) {
  if (edge_dirs.empty()) return {};
  if (!closed || edge_dirs.size() == 1) return viterbi(edge_dirs, axis, false, -1);
  ChainSolution a = viterbi(edge_dirs, axis, true, 0);
  ChainSolution b = viterbi(edge_dirs, axis, true, 1);
  return b.energy < a.energy ? b : a;
}

Vec3 boundary_axis(Label left, Label right) { return direction(left).cross(direction(right)); }

TurningPointSet detect_turning_points(const SurfaceMesh& mesh, const ChartGraph& graph) {
  TurningPointSet out;
  out.per_boundary.resize(graph.boundaries.size());
  std::vector<Vec3> dirs;
  for (std::size_t bi = 0; bi < graph.boundaries.size(); ++bi) {
    const Boundary& b = graph.boundaries[bi];
    const Label left = graph.left_label(b);
    const Label right = graph.right_label(b);
    if (axis(left) == axis(right)) continue;
    const Vec3 ax = boundary_axis(left, right);

    const std::size_t n = b.edges.size();
    dirs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int a = b.vertices[i];
      const int c = b.vertices[(i + 1) % b.vertices.size()];
      dirs[i] = (mesh.vertex(c) - mesh.vertex(a)).normalized();
    }
    const ChainSolution sol = solve_edge_chain(dirs, ax, b.closed);
    auto& tps = out.per_boundary[bi];
    for (std::size_t i = 0; i + 1 < n; ++i)
      if (sol.labels[i] != sol.labels[i + 1]) tps.push_back(b.vertices[i + 1]);
    if (b.closed && n > 1 && sol.labels[n - 1] != sol.labels[0]) tps.push_back(b.vertices[0]);
  }
  return out;
}

}  // namespace polycubify
