#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <span>
#include <vector>

namespace polycubify {

using Vec3 = Eigen::Vector3d;
using Triangle = std::array<int, 3>;

/// Undirected mesh edge. `v0 < v1`; `t0` traverses it as v0->v1, `t1` as v1->v0.
struct MeshEdge {
  int v0 = -1;
  int v1 = -1;
  int t0 = -1;
  int t1 = -1;
};

/// Closed, edge-manifold, consistently oriented triangle mesh.
///
/// Construction validates the input and precomputes per-triangle normals and
/// areas, edge adjacency and vertex one-rings. The object is immutable
/// afterwards and can be shared between threads.
class SurfaceMesh {
 public:
  /// Throws TopologyError for open / non-manifold / inconsistently oriented
  /// input and DegenerateError for zero-area triangles.
  SurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  std::span<const Vec3> vertices() const { return vertices_; }
  std::span<const Triangle> triangles() const { return triangles_; }
  std::span<const MeshEdge> edges() const { return edges_; }

  const Vec3& vertex(int v) const { return vertices_[v]; }
  const Triangle& triangle(int t) const { return triangles_[t]; }
  const Vec3& normal(int t) const { return normals_[t]; }
  const Vec3& centroid(int t) const { return centroids_[t]; }
  double area(int t) const { return areas_[t]; }
  const MeshEdge& edge(int e) const { return edges_[e]; }

  /// Triangle across local edge k, i.e. the edge (tri[k], tri[(k+1)%3]).
  int neighbor(int t, int k) const { return neighbors_[t][k]; }
  const std::array<int, 3>& neighbors(int t) const { return neighbors_[t]; }
  int edge_id(int t, int k) const { return triangle_edges_[t][k]; }

  std::span<const int> vertex_triangles(int v) const;
  std::span<const int> vertex_neighbors(int v) const;

  double average_edge_length() const { return average_edge_length_; }
  double total_area() const { return total_area_; }
  double average_area() const { return total_area_ / num_triangles(); }
  double bbox_diagonal() const { return bbox_diagonal_; }

 private:
  std::vector<Vec3> vertices_;
  std::vector<Triangle> triangles_;
  std::vector<Vec3> normals_;
  std::vector<Vec3> centroids_;
  std::vector<double> areas_;
  std::vector<std::array<int, 3>> neighbors_;
  std::vector<std::array<int, 3>> triangle_edges_;
  std::vector<MeshEdge> edges_;
  std::vector<int> vt_offsets_, vt_items_;
  std::vector<int> vv_offsets_, vv_items_;
  double average_edge_length_ = 0.0;
  double total_area_ = 0.0;
  double bbox_diagonal_ = 0.0;
};

using Tet = std::array<int, 4>;

/// Tetrahedral mesh with positively oriented cells.
struct TetMesh {
  std::vector<Vec3> vertices;
  std::vector<Tet> tets;
};

double signed_volume(const TetMesh& mesh, const Tet& tet);

/// Flips negatively oriented tets in place; throws OrientationError on a flat one.
void orient_tets(TetMesh& mesh);

/// Faces incident to exactly one tet, oriented outward, with unused vertices
/// dropped. The result is validated like any loaded surface.
SurfaceMesh extract_boundary(const TetMesh& mesh);

}  // namespace polycubify
