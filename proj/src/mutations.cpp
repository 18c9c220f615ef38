#include "mutations.hpp"

#include "alpha_expansion.hpp"
#include "error.hpp"
#include "initial_labeling.hpp"
#include "surface_band.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

namespace polycubify {

std::string_view mutation_kind_name(MutationKind kind) {
  switch (kind) {
    case MutationKind::kDirectionalPath: return "directional-path";
    case MutationKind::kChartRemoval: return "chart-removal";
    case MutationKind::kChartPropagation: return "chart-propagation";
  }
  return "unknown";
}

MutationKind mutation_kind_from_name(std::string_view name) {
  for (MutationKind k : {MutationKind::kDirectionalPath, MutationKind::kChartRemoval, MutationKind::kChartPropagation})
    if (mutation_kind_name(k) == name) return k;
  throw InvalidArgumentError("unknown mutation kind '" + std::string(name) + "'");
}

std::array<Label, 4> orthogonal_directions(Label l) {
  std::array<Label, 4> out{};
  int k = 0;
  for (Label d : kAllLabels)
    if (axis(d) != axis(l)) out[k++] = d;
  return out;
}

namespace {

void check_boundary(const ChartGraph& graph, int boundary) {
  if (boundary < 0 || boundary >= graph.num_boundaries())
    throw InvalidArgumentError("boundary " + std::to_string(boundary) + " does not exist");
}

std::vector<char> chart_mask(const SurfaceMesh& mesh, const ChartGraph& graph, int chart) {
  std::vector<char> mask(mesh.num_triangles(), 0);
  for (int t : graph.charts[chart].triangles) mask[t] = 1;
  return mask;
}

bool edge_in_chart(const SurfaceMesh& mesh, const ChartGraph& graph, int chart, int a, int b) {
  for (int t : mesh.vertex_triangles(a)) {
    if (graph.chart_of[t] != chart) continue;
    const Triangle& tri = mesh.triangle(t);
    if (std::find(tri.begin(), tri.end(), b) != tri.end()) return true;
  }
  return false;
}

}  // namespace

std::vector<int> directional_walk(const SurfaceMesh& mesh, const ChartGraph& graph, int chart, int start,
                                  int start_boundary, Label dir) {
  const Vec3 d = direction(dir);
  std::vector<char> on_start(mesh.num_vertices(), 0);
  if (start_boundary >= 0)
    for (int v : graph.boundaries[start_boundary].vertices) on_start[v] = 1;

  const double cap_f = std::ceil(10.0 * mesh.bbox_diagonal() / mesh.average_edge_length());
  const int cap = static_cast<int>(std::min(cap_f, 1e8));
  std::vector<char> visited(mesh.num_vertices(), 0);
  std::vector<int> path{start};
  visited[start] = 1;
  int cur = start;
  for (int step = 0; step < cap; ++step) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int nb : mesh.vertex_neighbors(cur)) {
      if (visited[nb]) continue;
      if (step == 0 && on_start[nb]) continue;
      if (!edge_in_chart(mesh, graph, chart, cur, nb)) continue;
      const double score = (mesh.vertex(nb) - mesh.vertex(cur)).normalized().dot(d);
      if (score > best_score) {
        best_score = score;
        best = nb;
      }
    }
    if (best < 0) throw NoPathError("directional walk from vertex " + std::to_string(start) + " is stuck");
    path.push_back(best);
    visited[best] = 1;
    cur = best;
    if (graph.is_boundary_vertex(cur)) return path;
  }
  throw NoPathError("directional walk from vertex " + std::to_string(start) + " exceeded the step cap");
}

Labeling directional_path(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph, int boundary,
                          int vertex, int side, int direction_index, double width, int generation) {
  check_boundary(graph, boundary);
  if (direction_index < 0 || direction_index > 3) throw InvalidArgumentError("direction index must be in 0..3");
  const Boundary& b = graph.boundaries[boundary];
  const int chart = side == 0 ? b.left_chart : b.right_chart;
  const Label chart_label = graph.charts[chart].label;
  const Label dir = orthogonal_directions(chart_label)[direction_index];

  const std::vector<int> path = directional_walk(mesh, graph, chart, vertex, boundary, dir);
  const std::vector<char> mask = chart_mask(mesh, graph, chart);
  const std::vector<int> band = surface_band(mesh, path, width, mask);

  // The path runs along `dir` and sits on a chart of `chart_label`, which
  // leaves the two labels of the remaining axis.
  const int third = 3 - axis(chart_label) - axis(dir);
  const Label pos = make_label(third, true);
  double score = 0.0;
  for (int t : band) score += mesh.area(t) * mesh.normal(t).dot(direction(pos));
  const Label label = score >= 0.0 ? pos : opposite(pos);

  Labeling out = l;
  for (int t : band) out.set(t, label, generation);
  return out;
}

Labeling chart_removal(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph, int chart,
                       int generation, double ratio) {
  if (chart < 0 || chart >= graph.num_charts())
    throw InvalidArgumentError("chart " + std::to_string(chart) + " does not exist");
  const Chart& c = graph.charts[chart];
  const int forbidden_code = code(c.label);

  // Local problem: chart triangles are free, their outside neighbors locked.
  std::unordered_map<int, int> local;
  std::vector<int> global;
  for (int t : c.triangles) {
    local.emplace(t, static_cast<int>(global.size()));
    global.push_back(t);
  }
  const int num_free = static_cast<int>(global.size());
  for (int t : c.triangles)
    for (int u : mesh.neighbors(t))
      if (!local.count(u)) {
        local.emplace(u, static_cast<int>(global.size()));
        global.push_back(u);
      }

  const int n = static_cast<int>(global.size());
  MultiLabelProblem p(n, kNumLabels);
  p.locked.assign(n, 0);
  p.forbidden.assign(n, 0);
  std::vector<int> init(n);
  for (int i = 0; i < n; ++i) {
    const int t = global[i];
    if (i >= num_free) {
      p.locked[i] = 1;
      init[i] = code(l[t]);
      continue;
    }
    p.forbidden[i] = 1u << forbidden_code;
    int best = -1;
    for (Label lab : kAllLabels) {
      const double u = labeling_unary(mesh, t, lab, ratio);
      p.unary_at(i, code(lab)) = u;
      if (code(lab) != forbidden_code && (best < 0 || u < p.unary_at(i, best))) best = code(lab);
    }
    init[i] = best;
  }
  for (int i = 0; i < num_free; ++i) {
    const int t = global[i];
    for (int u : mesh.neighbors(t)) {
      const int j = local.at(u);
      if (j < num_free && j < i) continue;  // counted from the other side
      p.add_pairwise(i, j, labeling_pairwise_weight(mesh.normal(t), mesh.normal(u)));
    }
  }
  const ExpansionResult r = solve_alpha_expansion(p, std::move(init));

  Labeling out = l;
  for (int i = 0; i < num_free; ++i) out.set(global[i], label_from_code(r.labels[i]), generation);
  return out;
}

namespace {

// Boundary vertices between the turning points (or path ends) around `vertex`.
std::vector<int> propagation_segment(const Boundary& b, const std::vector<int>& turning, int vertex) {
  std::vector<int> whole = b.vertices;
  if (b.closed) whole.push_back(b.vertices.front());
  if (vertex < 0 || turning.empty()) return whole;
  const int n = static_cast<int>(b.vertices.size());
  const auto it = std::find(b.vertices.begin(), b.vertices.end(), vertex);
  if (it == b.vertices.end()) return whole;
  const int i = static_cast<int>(it - b.vertices.begin());

  std::vector<char> is_tp(n, 0);
  for (int v : turning) {
    const auto jt = std::find(b.vertices.begin(), b.vertices.end(), v);
    if (jt != b.vertices.end()) is_tp[jt - b.vertices.begin()] = 1;
  }

  std::vector<int> seg;
  if (!b.closed) {
    int lo = i, hi = i;
    while (lo > 0 && !(is_tp[lo - 1])) --lo;
    if (lo > 0) --lo;
    while (hi < n - 1 && !(is_tp[hi + 1])) ++hi;
    if (hi < n - 1) ++hi;
    seg.assign(b.vertices.begin() + lo, b.vertices.begin() + hi + 1);
    return seg;
  }
  int back = 0;
  while (back < n && !is_tp[((i - back - 1) % n + n) % n]) ++back;
  int fwd = 0;
  while (fwd < n && !is_tp[(i + fwd + 1) % n]) ++fwd;
  if (back + fwd + 1 >= n) return whole;
  for (int k = -back - 1; k <= fwd + 1; ++k) seg.push_back(b.vertices[((i + k) % n + n) % n]);
  return seg;
}

}  // namespace

Labeling chart_propagation(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph,
                           const TurningPointSet& tps, int boundary, int vertex, int side, double width,
                           int generation) {
  check_boundary(graph, boundary);
  const Boundary& b = graph.boundaries[boundary];
  const int invader = side == 0 ? b.left_chart : b.right_chart;
  const int receiver = side == 0 ? b.right_chart : b.left_chart;
  static const std::vector<int> kNone;
  const std::vector<int>& turning =
      boundary < static_cast<int>(tps.per_boundary.size()) ? tps.per_boundary[boundary] : kNone;
  const std::vector<int> path = propagation_segment(b, turning, vertex);
  const std::vector<char> mask = chart_mask(mesh, graph, receiver);
  const Label label = graph.charts[invader].label;
  Labeling out = l;
  for (int t : surface_band(mesh, path, width, mask)) out.set(t, label, generation);
  return out;
}

Labeling apply_mutation(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph,
                        const TurningPointSet& tps, const MutationSpec& spec, int generation) {
  switch (spec.kind) {
    case MutationKind::kChartRemoval:
      return chart_removal(mesh, l, graph, spec.chart, generation);
    case MutationKind::kChartPropagation:
      return chart_propagation(mesh, l, graph, tps, spec.boundary, spec.vertex, spec.side, spec.width, generation);
    case MutationKind::kDirectionalPath:
      try {
        return directional_path(mesh, l, graph, spec.boundary, spec.vertex, spec.side, spec.direction, spec.width,
                                generation);
      } catch (const NoPathError&) {
        return l;
      }
  }
  return l;
}

namespace {

std::vector<int> boundaries_at_vertex(const SurfaceMesh& mesh, const ChartGraph& graph, int v) {
  std::vector<int> out;
  for (int t : mesh.vertex_triangles(v))
    for (int k = 0; k < 3; ++k) {
      const int e = mesh.edge_id(t, k);
      const MeshEdge& edge = mesh.edge(e);
      if ((edge.v0 == v || edge.v1 == v) && graph.boundary_of_edge[e] >= 0) out.push_back(graph.boundary_of_edge[e]);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int uniform_index(Rng& rng, std::size_t n) {
  return static_cast<int>(std::uniform_int_distribution<std::size_t>(0, n - 1)(rng));
}

}  // namespace

bool draw_mutation(const SurfaceMesh& mesh, const ChartGraph& graph, const TurningPointSet& tps, Rng& rng,
                   MutationSpec& spec) {
  spec = MutationSpec{};
  spec.kind = static_cast<MutationKind>(uniform_index(rng, 3));
  bool ok = true;
  if (spec.kind == MutationKind::kChartRemoval) {
    const ValidityBreakdown vb = validity_breakdown(graph);
    if (!vb.invalid_charts.empty())
      spec.chart = vb.invalid_charts[uniform_index(rng, vb.invalid_charts.size())];
    else
      spec.chart = uniform_index(rng, graph.num_charts());
  } else if (tps.count() > 0) {
    int k = uniform_index(rng, tps.count());
    for (int b = 0; b < static_cast<int>(tps.per_boundary.size()); ++b) {
      const int sz = static_cast<int>(tps.per_boundary[b].size());
      if (k < sz) {
        spec.boundary = b;
        spec.vertex = tps.per_boundary[b][k];
        break;
      }
      k -= sz;
    }
  } else {
    std::vector<int> candidates;
    for (int v = 0; v < mesh.num_vertices(); ++v)
      if (graph.is_boundary_vertex(v)) candidates.push_back(v);
    if (candidates.empty()) {
      ok = false;
    } else {
      spec.vertex = candidates[uniform_index(rng, candidates.size())];
      const std::vector<int> bs = boundaries_at_vertex(mesh, graph, spec.vertex);
      spec.boundary = bs[uniform_index(rng, bs.size())];
    }
  }
  spec.side = uniform_index(rng, 2);
  spec.direction = uniform_index(rng, 4);
  const double lavg = mesh.average_edge_length();
  spec.width = std::uniform_real_distribution<double>(lavg, 5.0 * lavg)(rng);
  return ok;
}

MutationResult random_mutation(const SurfaceMesh& mesh, const Labeling& l, const ChartGraph& graph,
                               const TurningPointSet& tps, Rng& rng, int generation) {
  MutationResult r;
  r.applied = draw_mutation(mesh, graph, tps, rng, r.spec);
  r.labeling = r.applied ? apply_mutation(mesh, l, graph, tps, r.spec, generation) : l;
  return r;
}

}  // namespace polycubify
