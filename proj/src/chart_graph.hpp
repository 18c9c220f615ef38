#pragma once

#include "labeling.hpp"
#include "mesh.hpp"

#include <vector>

namespace polycubify {

struct Chart {
  Label label = Label::kPosX;
  std::vector<int> triangles;  // ascending
  std::vector<int> neighbors;  // chart ids, ascending, deduplicated
};

/// Maximal run of boundary edges between two corners, or a corner-free cycle.
///
/// Traversal keeps `left_chart` (the smaller chart id) on the left when the
/// surface is seen from outside. For an open path `vertices` has one more
/// entry than `edges`; for a cycle both have the same length and edge i joins
/// vertices i and i+1 (mod n).
struct Boundary {
  std::vector<int> vertices;
  std::vector<int> edges;
  bool closed = false;
  int left_chart = -1;
  int right_chart = -1;
};

struct Corner {
  int vertex = -1;
  int valency = 0;
};

struct ChartGraph {
  std::vector<int> chart_of;        // per triangle
  std::vector<Chart> charts;
  std::vector<Boundary> boundaries;
  std::vector<Corner> corners;      // ascending vertex id
  std::vector<int> valency;         // per vertex: incident boundary edges
  std::vector<int> boundary_of_edge;  // per mesh edge, -1 inside a chart

  int num_charts() const { return static_cast<int>(charts.size()); }
  int num_boundaries() const { return static_cast<int>(boundaries.size()); }
  int num_corners() const { return static_cast<int>(corners.size()); }

  Label left_label(const Boundary& b) const { return charts[b.left_chart].label; }
  Label right_label(const Boundary& b) const { return charts[b.right_chart].label; }
  bool is_opposite(const Boundary& b) const { return opposite(left_label(b)) == right_label(b); }
  bool is_boundary_vertex(int v) const { return valency[v] > 0; }
  bool is_corner(int v) const { return valency[v] >= 3; }
};

ChartGraph extract_charts(const SurfaceMesh& mesh, const Labeling& labeling);

struct ValidityBreakdown {
  int invalid_corners = 0;     // valency >= 4
  int invalid_boundaries = 0;  // between opposite labels
  int chart_deficit = 0;       // sum over charts with < 4 neighbors of (4 - N_c)
  std::vector<int> invalid_charts;

  int total() const { return invalid_corners + invalid_boundaries + chart_deficit; }
};

ValidityBreakdown validity_breakdown(const ChartGraph& graph);

/// |V_inv| + |B_inv| + sum over invalid charts of (4 - N_c). Zero means pseudo-valid.
int validity_proxy(const ChartGraph& graph);

}  // namespace polycubify
