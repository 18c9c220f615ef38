#include "chart_graph.hpp"

#include "error.hpp"

#include <algorithm>
#include <string>

namespace polycubify {
namespace {

void label_charts(const SurfaceMesh& mesh, const Labeling& labeling, ChartGraph& g) {
  const int nt = mesh.num_triangles();
  g.chart_of.assign(nt, -1);
  std::vector<int> stack;
  for (int seed = 0; seed < nt; ++seed) {
    if (g.chart_of[seed] >= 0) continue;
    const int id = g.num_charts();
    Chart chart;
    chart.label = labeling[seed];
    g.chart_of[seed] = id;
    stack.push_back(seed);
    while (!stack.empty()) {
      const int t = stack.back();
      stack.pop_back();
      chart.triangles.push_back(t);
      for (int u : mesh.neighbors(t)) {
        if (g.chart_of[u] < 0 && labeling[u] == chart.label) {
          g.chart_of[u] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(chart.triangles.begin(), chart.triangles.end());
    g.charts.push_back(std::move(chart));
  }
}

// Chart on the left of the directed edge a->b.
int chart_left_of(const SurfaceMesh& mesh, const ChartGraph& g, int edge, int a) {
  const MeshEdge& e = mesh.edge(edge);
  return g.chart_of[a == e.v0 ? e.t0 : e.t1];
}

}  // namespace

ChartGraph extract_charts(const SurfaceMesh& mesh, const Labeling& labeling) {
  if (labeling.size() != mesh.num_triangles())
    throw InvalidArgumentError("labeling size " + std::to_string(labeling.size()) + " does not match " +
                               std::to_string(mesh.num_triangles()) + " triangles");
  ChartGraph g;
  label_charts(mesh, labeling, g);

  const int nv = mesh.num_vertices();
  const int ne = mesh.num_edges();
  g.valency.assign(nv, 0);
  g.boundary_of_edge.assign(ne, -1);

  // Boundary edges incident to each vertex.
  std::vector<std::vector<int>> vertex_edges(nv);
  std::vector<int> boundary_edges;
  for (int e = 0; e < ne; ++e) {
    const MeshEdge& edge = mesh.edge(e);
    const int c0 = g.chart_of[edge.t0];
    const int c1 = g.chart_of[edge.t1];
    if (c0 == c1) continue;
    boundary_edges.push_back(e);
    vertex_edges[edge.v0].push_back(e);
    vertex_edges[edge.v1].push_back(e);
    ++g.valency[edge.v0];
    ++g.valency[edge.v1];
    g.charts[c0].neighbors.push_back(c1);
    g.charts[c1].neighbors.push_back(c0);
  }
  for (auto& chart : g.charts) {
    std::sort(chart.neighbors.begin(), chart.neighbors.end());
    chart.neighbors.erase(std::unique(chart.neighbors.begin(), chart.neighbors.end()), chart.neighbors.end());
  }
  for (int v = 0; v < nv; ++v)
    if (g.valency[v] >= 3) g.corners.push_back({v, g.valency[v]});

  auto other_end = [&](int e, int v) {
    const MeshEdge& edge = mesh.edge(e);
    return edge.v0 == v ? edge.v1 : edge.v0;
  };
  auto next_edge = [&](int v, int from_edge) {
    for (int e : vertex_edges[v])
      if (e != from_edge && g.boundary_of_edge[e] == -1) return e;
    return -1;
  };

  auto finish = [&](Boundary b) {
    const int id = g.num_boundaries();
    const MeshEdge& first = mesh.edge(b.edges.front());
    const int c0 = g.chart_of[first.t0];
    const int c1 = g.chart_of[first.t1];
    b.left_chart = std::min(c0, c1);
    b.right_chart = std::max(c0, c1);
    if (chart_left_of(mesh, g, b.edges.front(), b.vertices[0]) != b.left_chart) {
      if (b.closed) {
        std::reverse(b.vertices.begin() + 1, b.vertices.end());
        std::reverse(b.edges.begin(), b.edges.end());
      } else {
        std::reverse(b.vertices.begin(), b.vertices.end());
        std::reverse(b.edges.begin(), b.edges.end());
      }
    }
    for (int e : b.edges) g.boundary_of_edge[e] = id;
    g.boundaries.push_back(std::move(b));
  };

  // Open paths start and end at corners.
  for (const Corner& corner : g.corners) {
    for (int start_edge : vertex_edges[corner.vertex]) {
      if (g.boundary_of_edge[start_edge] >= 0) continue;
      Boundary b;
      int v = corner.vertex;
      int e = start_edge;
      b.vertices.push_back(v);
      while (true) {
        b.edges.push_back(e);
        g.boundary_of_edge[e] = -2;  // in progress
        v = other_end(e, v);
        b.vertices.push_back(v);
        if (g.is_corner(v)) break;
        e = next_edge(v, e);
        if (e < 0) throw TopologyError("boundary walk stopped at a non-corner vertex");
      }
      for (int pe : b.edges) g.boundary_of_edge[pe] = -1;
      finish(std::move(b));
    }
  }

  // Whatever remains forms corner-free cycles.
  for (int start_edge : boundary_edges) {
    if (g.boundary_of_edge[start_edge] >= 0) continue;
    Boundary b;
    b.closed = true;
    const int start = mesh.edge(start_edge).v0;
    int v = start;
    int e = start_edge;
    while (true) {
      b.vertices.push_back(v);
      b.edges.push_back(e);
      g.boundary_of_edge[e] = -2;
      v = other_end(e, v);
      if (v == start) break;
      e = next_edge(v, e);
      if (e < 0) throw TopologyError("boundary cycle does not close");
    }
    for (int pe : b.edges) g.boundary_of_edge[pe] = -1;
    finish(std::move(b));
  }
  return g;
}

ValidityBreakdown validity_breakdown(const ChartGraph& graph) {
  ValidityBreakdown out;
  for (const Corner& c : graph.corners)
    if (c.valency >= 4) ++out.invalid_corners;
  for (const Boundary& b : graph.boundaries)
    if (graph.is_opposite(b)) ++out.invalid_boundaries;
  for (int c = 0; c < graph.num_charts(); ++c) {
    const int n = static_cast<int>(graph.charts[c].neighbors.size());
    if (n < 4) {
      out.invalid_charts.push_back(c);
      out.chart_deficit += 4 - n;
    }
  }
  return out;
}

int validity_proxy(const ChartGraph& graph) { return validity_breakdown(graph).total(); }

}  // namespace polycubify
