#include "fast_polycube.hpp"

#include "error.hpp"

#include <Eigen/Sparse>

#include <cmath>
#include <numeric>
#include <string>

namespace polycubify {
namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace

PolycubeVariables build_polycube_variables(const SurfaceMesh& mesh, const ChartGraph& graph) {
  const int nv = mesh.num_vertices();
  const int nc = graph.num_charts();
  PolycubeVariables vars;
  vars.chart_var.assign(nc, -1);

  for (int a = 0; a < 3; ++a) {
    PolycubeVariables::Axis& ax = vars.axes[a];

    // Charts on this axis, merged when they share a vertex.
    UnionFind charts(nc);
    std::vector<int> chart_at(nv, -1);
    for (int c = 0; c < nc; ++c) {
      if (axis(graph.charts[c].label) != a) continue;
      for (int t : graph.charts[c].triangles)
        for (int v : mesh.triangle(t)) {
          if (chart_at[v] >= 0)
            charts.unite(chart_at[v], c);
          else
            chart_at[v] = c;
        }
    }

    ax.var_of_vertex.assign(nv, -1);
    std::vector<int> var_of_root(nc, -1);
    std::vector<double> sum;
    std::vector<int> count;
    auto new_var = [&]() {
      sum.push_back(0.0);
      count.push_back(0);
      return ax.num_vars++;
    };
    for (int v = 0; v < nv; ++v) {
      int var;
      if (chart_at[v] >= 0) {
        const int root = charts.find(chart_at[v]);
        if (var_of_root[root] < 0) var_of_root[root] = new_var();
        var = var_of_root[root];
      } else {
        var = new_var();
      }
      ax.var_of_vertex[v] = var;
      sum[var] += mesh.vertex(v)[a];
      ++count[var];
    }
    ax.input_value.resize(ax.num_vars);
    for (int k = 0; k < ax.num_vars; ++k) ax.input_value[k] = count[k] > 0 ? sum[k] / count[k] : 0.0;
    for (int c = 0; c < nc; ++c)
      if (axis(graph.charts[c].label) == a) vars.chart_var[c] = var_of_root[charts.find(c)];

    // Gauge: pin the smallest variable of every connected component.
    UnionFind comps(ax.num_vars);
    for (const MeshEdge& e : mesh.edges()) comps.unite(ax.var_of_vertex[e.v0], ax.var_of_vertex[e.v1]);
    for (int k = 0; k < ax.num_vars; ++k)
      if (comps.find(k) == k) ax.pinned.push_back(k);
  }
  return vars;
}

double polycube_objective(const SurfaceMesh& mesh, std::span<const Vec3> positions) {
  double f = 0.0;
  for (const MeshEdge& e : mesh.edges()) {
    const Vec3 r = (positions[e.v0] - positions[e.v1]) - (mesh.vertex(e.v0) - mesh.vertex(e.v1));
    f += r.squaredNorm();
  }
  return f;
}

namespace {

struct AxisSolve {
  std::vector<double> values;
  double objective = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Minimizes sum_edges (x_u - x_w - delta)^2 over the free variables of one
// axis with Jacobi-preconditioned conjugate gradients.
AxisSolve solve_axis(const SurfaceMesh& mesh, const PolycubeVariables::Axis& ax, int a) {
  const int n = ax.num_vars;
  std::vector<int> free_index(n, -1);
  std::vector<char> is_pinned(n, 0);
  for (int k : ax.pinned) is_pinned[k] = 1;
  int nf = 0;
  for (int k = 0; k < n; ++k)
    if (!is_pinned[k]) free_index[k] = nf++;

  AxisSolve out;
  out.values = ax.input_value;

  // Objective with the free variables at zero gives the constant term.
  double c0 = 0.0;
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nf);
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(4 * mesh.num_edges());
  for (const MeshEdge& e : mesh.edges()) {
    const int u = ax.var_of_vertex[e.v0];
    const int w = ax.var_of_vertex[e.v1];
    const double delta = mesh.vertex(e.v0)[a] - mesh.vertex(e.v1)[a];
    if (u == w) {
      c0 += delta * delta;
      continue;
    }
    const int fu = free_index[u];
    const int fw = free_index[w];
    // Term (x_u - x_w - delta)^2 with pinned values moved to the constant side.
    double k = -delta;
    if (fu < 0) k += ax.input_value[u];
    if (fw < 0) k -= ax.input_value[w];
    c0 += k * k;
    if (fu >= 0) {
      trips.emplace_back(fu, fu, 1.0);
      b[fu] -= k;
    }
    if (fw >= 0) {
      trips.emplace_back(fw, fw, 1.0);
      b[fw] += k;
    }
    if (fu >= 0 && fw >= 0) {
      trips.emplace_back(fu, fw, -1.0);
      trips.emplace_back(fw, fu, -1.0);
    }
  }
  if (nf == 0) {
    out.objective = c0;
    out.converged = true;
    return out;
  }

  Eigen::SparseMatrix<double> L(nf, nf);
  L.setFromTriplets(trips.begin(), trips.end());
  Eigen::VectorXd inv_diag = L.diagonal();
  for (int i = 0; i < nf; ++i) inv_diag[i] = inv_diag[i] > 0.0 ? 1.0 / inv_diag[i] : 1.0;

  Eigen::VectorXd x(nf);
  for (int k = 0; k < n; ++k)
    if (free_index[k] >= 0) x[free_index[k]] = ax.input_value[k];

  // f(x) = x'Lx - 2b'x + c0 = c0 - b'x - r'x with r = b - Lx; gradient = -2r.
  Eigen::VectorXd r = b - L * x;
  Eigen::VectorXd z = inv_diag.cwiseProduct(r);
  Eigen::VectorXd p = z;
  double rz = r.dot(z);
  auto objective = [&]() { return std::max(0.0, c0 - b.dot(x) - r.dot(x)); };

  int it = 0;
  double obj = objective();
  double grad = 2.0 * r.norm();
  while (grad > 1e-8 * (1.0 + obj) && it < kPolycubeMaxIterations) {
    const Eigen::VectorXd Lp = L * p;
    const double pLp = p.dot(Lp);
    if (!(pLp > 0.0)) break;
    const double alpha = rz / pLp;
    x += alpha * p;
    r -= alpha * Lp;
    ++it;
    // Refresh the residual now and then to limit drift.
    if (it % 50 == 0) r = b - L * x;
    z = inv_diag.cwiseProduct(r);
    const double rz_new = r.dot(z);
    p = z + (rz_new / rz) * p;
    rz = rz_new;
    obj = objective();
    grad = 2.0 * r.norm();
  }
  r = b - L * x;
  out.gradient_norm = 2.0 * r.norm();
  out.iterations = it;
  out.converged = out.gradient_norm <= 1e-8 * (1.0 + objective());
  for (int k = 0; k < n; ++k)
    if (free_index[k] >= 0) out.values[k] = x[free_index[k]];
  return out;
}

}  // namespace

FastPolycube fast_surface_polycube(const SurfaceMesh& mesh, const Labeling& labeling, const ChartGraph& graph,
                                   bool strict) {
  const PolycubeVariables vars = build_polycube_variables(mesh, graph);
  FastPolycube pc;
  pc.positions.assign(mesh.num_vertices(), Vec3::Zero());
  pc.triangle_labels.assign(labeling.labels().begin(), labeling.labels().end());
  pc.converged = true;
  double grad_sq = 0.0;
  std::array<std::vector<double>, 3> values;
  for (int a = 0; a < 3; ++a) {
    AxisSolve s = solve_axis(mesh, vars.axes[a], a);
    grad_sq += s.gradient_norm * s.gradient_norm;
    pc.iterations = std::max(pc.iterations, s.iterations);
    pc.converged = pc.converged && s.converged;
    for (int v = 0; v < mesh.num_vertices(); ++v) pc.positions[v][a] = s.values[vars.axes[a].var_of_vertex[v]];
    values[a] = std::move(s.values);
  }
  pc.gradient_norm = std::sqrt(grad_sq);
  pc.residual = polycube_objective(mesh, pc.positions);
  pc.chart_coordinate.resize(graph.num_charts());
  for (int c = 0; c < graph.num_charts(); ++c)
    pc.chart_coordinate[c] = values[axis(graph.charts[c].label)][vars.chart_var[c]];
  if (strict && !pc.converged && pc.gradient_norm > 1e-4)
    throw SolveError("polycube least squares stopped after " + std::to_string(pc.iterations) +
                     " iterations with gradient norm " + std::to_string(pc.gradient_norm));
  return pc;
}

}  // namespace polycubify
