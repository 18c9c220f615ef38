#include "chart_graph.hpp"
#include "oracles.hpp"
#include "shapes.hpp"
#include "turning_points.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

using namespace polycubify;
using namespace oracles;

namespace {

Labeling random_labeling(const SurfaceMesh& m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(0, 5);
  return shapes::label_by(m, [&](int) { return label_from_code(d(rng)); });
}

// Random labeling with some spatial coherence: grow a few seeds.
Labeling blobby_labeling(const SurfaceMesh& m, std::mt19937_64& rng, int seeds) {
  std::vector<int> lab(m.num_triangles(), -1);
  std::vector<int> frontier;
  std::uniform_int_distribution<int> pick(0, m.num_triangles() - 1), d(0, 5);
  for (int s = 0; s < seeds; ++s) {
    const int t = pick(rng);
    lab[t] = d(rng);
    frontier.push_back(t);
  }
  while (!frontier.empty()) {
    std::uniform_int_distribution<std::size_t> pf(0, frontier.size() - 1);
    const std::size_t i = pf(rng);
    const int t = frontier[i];
    frontier[i] = frontier.back();
    frontier.pop_back();
    for (int n : m.neighbors(t))
      if (lab[n] < 0) {
        lab[n] = lab[t];
        frontier.push_back(n);
      }
  }
  return shapes::label_by(m, [&](int t) { return label_from_code(lab[t]); });
}

// Signed permutation of axes acting on labels.
Label permute(Label l, const std::array<int, 3>& perm, const std::array<bool, 3>& flip) {
  const int a = perm[axis(l)];
  return make_label(a, is_positive(l) != flip[a]);
}

void check_graph_invariants(const SurfaceMesh& m, const Labeling& l, const ChartGraph& g) {
  // Charts: edge-connected, same label, and maximal.
  for (int t = 0; t < m.num_triangles(); ++t) {
    const int c = g.chart_of[t];
    CHECK(g.charts[c].label == l[t]);
    for (int n : m.neighbors(t)) CHECK((l[n] == l[t]) == (g.chart_of[n] == c));
  }
  int covered = 0;
  for (const Chart& c : g.charts) covered += static_cast<int>(c.triangles.size());
  CHECK(covered == m.num_triangles());

  // Each boundary edge in exactly one boundary; edges chain through the path vertices.
  std::vector<int> seen(m.num_edges(), 0);
  std::vector<int> ends(m.num_vertices(), 0);
  for (int b = 0; b < g.num_boundaries(); ++b) {
    const Boundary& B = g.boundaries[b];
    CHECK(B.left_chart < B.right_chart);
    CHECK(B.vertices.size() == B.edges.size() + (B.closed ? 0 : 1));
    if (!B.closed) {
      ++ends[B.vertices.front()];
      ++ends[B.vertices.back()];
    }
    for (std::size_t i = 0; i < B.edges.size(); ++i) {
      const int e = B.edges[i];
      ++seen[e];
      CHECK(g.boundary_of_edge[e] == b);
      const int a = B.vertices[i];
      const int c = B.vertices[(i + 1) % B.vertices.size()];
      const MeshEdge& E = m.edge(e);
      CHECK(std::minmax(a, c) == std::minmax(E.v0, E.v1));
      // The left chart holds the directed edge a -> c in its own winding.
      const int tl = g.chart_of[E.t0] == B.left_chart ? E.t0 : E.t1;
      CHECK(g.chart_of[tl] == B.left_chart);
      const Triangle& T = m.triangle(tl);
      bool forward = false;
      for (int k = 0; k < 3; ++k) forward = forward || (T[k] == a && T[(k + 1) % 3] == c);
      CHECK(forward);
      const std::set<int> pair = {g.chart_of[E.t0], g.chart_of[E.t1]};
      CHECK(pair == std::set<int>{B.left_chart, B.right_chart});
    }
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const MeshEdge& E = m.edge(e);
    const bool cut = l[E.t0] != l[E.t1];
    CHECK(seen[e] == (cut ? 1 : 0));
  }
  // Corner valency equals incident boundary edges and the number of path ends there.
  std::vector<int> incident(m.num_vertices(), 0);
  for (int e = 0; e < m.num_edges(); ++e)
    if (seen[e]) {
      ++incident[m.edge(e).v0];
      ++incident[m.edge(e).v1];
    }
  for (int v = 0; v < m.num_vertices(); ++v) {
    CHECK(g.valency[v] == incident[v]);
    if (incident[v] >= 3) CHECK(ends[v] == incident[v]);
    if (incident[v] < 3) CHECK(ends[v] == 0);
  }
  int corners = 0;
  for (int v = 0; v < m.num_vertices(); ++v) corners += incident[v] >= 3;
  CHECK(g.num_corners() == corners);
  // Neighbor sets from triangle adjacency.
  for (int c = 0; c < g.num_charts(); ++c) {
    std::set<int> expect;
    for (int t : g.charts[c].triangles)
      for (int n : m.neighbors(t))
        if (g.chart_of[n] != c) expect.insert(g.chart_of[n]);
    CHECK(std::vector<int>(expect.begin(), expect.end()) == g.charts[c].neighbors);
  }
}

}  // namespace

TEST_CASE("cube charts") {
  const SurfaceMesh m = shapes::grid_cube(3);
  const Labeling l = naive_normal_labeling(m);
  const ChartGraph g = extract_charts(m, l);
  CHECK(g.num_charts() == 6);
  CHECK(g.num_boundaries() == 12);
  CHECK(g.num_corners() == 8);
  for (const Corner& c : g.corners) CHECK(c.valency == 3);
  for (const Chart& c : g.charts) CHECK(c.neighbors.size() == 4);
  CHECK(validity_proxy(g) == 0);
  check_graph_invariants(m, l, g);
}

TEST_CASE("single label") {
  const SurfaceMesh m = shapes::grid_cube(2);
  const Labeling l(std::vector<Label>(m.num_triangles(), Label::kPosX));
  const ChartGraph g = extract_charts(m, l);
  CHECK(g.num_charts() == 1);
  CHECK(g.num_boundaries() == 0);
  CHECK(g.num_corners() == 0);
  CHECK(validity_proxy(g) == 4);
}

TEST_CASE("l block charts") {
  const SurfaceMesh m = shapes::l_block(2);
  const Labeling l = naive_normal_labeling(m);
  const ChartGraph g = extract_charts(m, l);
  CHECK(g.num_charts() == 8);
  CHECK(g.num_corners() == 12);
  CHECK(validity_proxy(g) == 0);
  check_graph_invariants(m, l, g);
}

TEST_CASE("invalid configurations") {
  const SurfaceMesh m = shapes::grid_cube(8);

  SUBCASE("isolated patch") {
    const ChartGraph g = extract_charts(m, shapes::isolated_patch(m));
    const ValidityBreakdown v = validity_breakdown(g);
    CHECK(v.invalid_corners == 0);
    CHECK(v.invalid_boundaries == 0);
    CHECK(v.chart_deficit == 3);
    CHECK(v.invalid_charts.size() == 1);
    CHECK(validity_proxy(g) == 3);
    CHECK(g.num_charts() == 7);
    // The patch is ringed by a single corner-free boundary.
    int closed = 0;
    for (const Boundary& b : g.boundaries) closed += b.closed;
    CHECK(closed == 1);
  }
  SUBCASE("opposite boundary") {
    const ChartGraph g = extract_charts(m, shapes::opposite_split(m));
    const ValidityBreakdown v = validity_breakdown(g);
    CHECK(v.invalid_boundaries == 1);
    CHECK(v.invalid_corners == 0);
    CHECK(v.chart_deficit == 0);
    CHECK(validity_proxy(g) == 1);
  }
  SUBCASE("four-way corner") {
    const ChartGraph g = extract_charts(m, shapes::pinwheel(m));
    const ValidityBreakdown v = validity_breakdown(g);
    CHECK(v.invalid_corners == 1);
    CHECK(v.invalid_boundaries == 0);
    CHECK(v.chart_deficit == 4);
    CHECK(validity_proxy(g) == 5);
    bool found = false;
    for (const Corner& c : g.corners)
      if (c.valency == 4) found = (m.vertex(c.vertex) - Vec3(0.5, 0.5, 1.0)).norm() < 1e-12;
    CHECK(found);
  }
  SUBCASE("proxy passes an unrealizable labeling") {
    const SurfaceMesh cube = shapes::grid_cube(2);
    const ChartGraph g = extract_charts(cube, shapes::flipped_face(cube));
    CHECK(validity_proxy(g) == 0);
  }
}

TEST_CASE("random labelings satisfy the graph invariants") {
  std::mt19937_64 rng(7);
  const SurfaceMesh meshes[] = {shapes::grid_cube(3), shapes::icosphere(2), shapes::l_block(2)};
  for (const SurfaceMesh& m : meshes)
    for (int trial = 0; trial < 10; ++trial) {
      const Labeling l = trial % 2 ? random_labeling(m, rng) : blobby_labeling(m, rng, 12);
      const ChartGraph g = extract_charts(m, l);
      check_graph_invariants(m, l, g);
      CHECK(validity_proxy(g) == proxy_oracle(m, l, g));

      // Rebuilding the labeling from chart ids reproduces the graph.
      std::vector<Label> rebuilt(m.num_triangles());
      for (int t = 0; t < m.num_triangles(); ++t) rebuilt[t] = g.charts[g.chart_of[t]].label;
      const ChartGraph g2 = extract_charts(m, Labeling(rebuilt));
      CHECK(g2.chart_of == g.chart_of);
      CHECK(g2.num_boundaries() == g.num_boundaries());
      for (int b = 0; b < g.num_boundaries(); ++b) {
        CHECK(g2.boundaries[b].edges == g.boundaries[b].edges);
        CHECK(g2.boundaries[b].vertices == g.boundaries[b].vertices);
      }
      CHECK(g2.valency == g.valency);
    }
}

TEST_CASE("proxy is invariant under signed axis permutations") {
  std::mt19937_64 rng(11);
  const SurfaceMesh m = shapes::icosphere(2);
  std::array<int, 3> perm = {0, 1, 2};
  for (int trial = 0; trial < 20; ++trial) {
    const Labeling l = blobby_labeling(m, rng, 20);
    const int vp = validity_proxy(extract_charts(m, l));
    std::shuffle(perm.begin(), perm.end(), rng);
    const std::array<bool, 3> flip = {bool(rng() & 1), bool(rng() & 1), bool(rng() & 1)};
    const Labeling p = shapes::label_by(m, [&](int t) { return permute(l[t], perm, flip); });
    CHECK(validity_proxy(extract_charts(m, p)) == vp);
  }
}

TEST_CASE("boundary axis") {
  CHECK(boundary_axis(Label::kPosX, Label::kPosY) == Vec3(0, 0, 1));
  CHECK(boundary_axis(Label::kPosY, Label::kPosX) == Vec3(0, 0, -1));
  CHECK(boundary_axis(Label::kNegZ, Label::kPosX) == Vec3(0, -1, 0));
}

TEST_CASE("edge chains") {
  const Vec3 ax(0, 0, 1);
  SUBCASE("straight") {
    const std::vector<Vec3> e(6, ax);
    const ChainSolution s = solve_edge_chain(e, ax, false);
    CHECK(s.energy == 0.0);
    CHECK(std::count(s.labels.begin(), s.labels.end(), s.labels[0]) == 6);
  }
  SUBCASE("one reversal") {
    const std::vector<Vec3> e = {ax, ax, -ax, -ax};
    const ChainSolution s = solve_edge_chain(e, ax, false);
    CHECK(s.labels[0] == s.labels[1]);
    CHECK(s.labels[2] == s.labels[3]);
    CHECK(s.labels[1] != s.labels[2]);
    CHECK(s.energy == doctest::Approx(oracle_minimum(e, ax, false)));
  }
  SUBCASE("u turn") {
    const std::vector<Vec3> e = {Vec3(0.2, 0, 1).normalized(), Vec3(0.2, 0, -1).normalized(),
                                 Vec3(0.2, 0, 1).normalized()};
    const ChainSolution s = solve_edge_chain(e, ax, false);
    CHECK(oracle_energy(e, ax, false, s.labels) == oracle_minimum(e, ax, false));
  }
  SUBCASE("library energy matches the oracle") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Vec3> e(7);
      for (Vec3& v : e) v = Vec3(g(rng), g(rng), g(rng)).normalized();
      std::vector<int> lab(7);
      for (int& x : lab) x = rng() & 1;
      for (bool closed : {false, true})
        CHECK(edge_chain_energy(e, ax, closed, lab) == doctest::Approx(oracle_energy(e, ax, closed, lab)));
    }
  }
}

TEST_CASE("chain solver equals exhaustive search") {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> g;
  std::uniform_int_distribution<int> len(1, 12);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = len(rng);
    const bool closed = trial % 2 == 1 && n >= 2;
    const Vec3 ax = Vec3::Unit(trial % 3) * (trial % 5 < 2 ? -1.0 : 1.0);
    std::vector<Vec3> e(n);
    for (Vec3& v : e) {
      // Mostly along the axis, with noise, so reversals are common.
      v = (ax * (g(rng) > 0 ? 1.0 : -1.0) + 0.6 * Vec3(g(rng), g(rng), g(rng))).normalized();
    }
    const ChainSolution s = solve_edge_chain(e, ax, closed);
    const double best = oracle_minimum(e, ax, closed);
    CHECK(s.labels.size() == static_cast<std::size_t>(n));
    CHECK(oracle_energy(e, ax, closed, s.labels) == doctest::Approx(best).epsilon(1e-12));
    CHECK(std::abs(s.energy - best) <= 1e-12);
  }
}

TEST_CASE("turning points on fixtures") {
  SUBCASE("cube has none") {
    const SurfaceMesh m = shapes::grid_cube(4);
    const ChartGraph g = extract_charts(m, naive_normal_labeling(m));
    CHECK(detect_turning_points(m, g).count() == 0);
  }
  // +Y region on the top face of the 8x8 cube, bounded against +Z.
  const SurfaceMesh m = shapes::grid_cube(8);
  const Labeling naive = naive_normal_labeling(m);
  auto top_region = [&](auto inside) {
    return shapes::label_by(m, [&](int t) {
      if (m.normal(t).z() < 0.5) return naive[t];
      return inside(m.centroid(t)) ? Label::kPosY : Label::kPosZ;
    });
  };
  auto in = [](double v, double lo, double hi) { return v > lo && v < hi; };
  SUBCASE("a tongue has no reversal along the boundary axis") {
    const Labeling l = top_region([&](const Vec3& c) {
      return c.y() > 0.75 || (in(c.x(), 0.25, 0.75) && in(c.y(), 0.25, 0.75));
    });
    const ChartGraph g = extract_charts(m, l);
    CHECK(validity_proxy(g) == 0);
    CHECK(detect_turning_points(m, g).count() == 0);
  }
  SUBCASE("an overhang reverses twice") {
    const Labeling l = top_region([&](const Vec3& c) {
      return c.y() > 0.75 || (in(c.x(), 0.25, 0.375) && in(c.y(), 0.25, 0.75)) ||
             (in(c.x(), 0.25, 0.75) && in(c.y(), 0.25, 0.375));
    });
    const ChartGraph g = extract_charts(m, l);
    const TurningPointSet tps = detect_turning_points(m, g);
    CHECK(tps.count() == 2);
    for (int b = 0; b < g.num_boundaries(); ++b)
      for (int v : tps.per_boundary[b]) {
        const auto& verts = g.boundaries[b].vertices;
        CHECK(std::find(verts.begin(), verts.end(), v) != verts.end());
        const Vec3& p = m.vertex(v);
        CHECK(p.z() == 1.0);
        CHECK(p.y() >= 0.25);
        CHECK(p.y() <= 0.375);
        CHECK((p.x() == 0.375 || p.x() == 0.75));
      }
  }
}
