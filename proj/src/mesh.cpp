#include "mesh.hpp"

#include "error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <unordered_map>

namespace polycubify {
namespace {

std::uint64_t directed_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

void build_csr(int n, const std::vector<std::pair<int, int>>& pairs, std::vector<int>& offsets,
               std::vector<int>& items) {
  offsets.assign(n + 1, 0);
  for (const auto& [key, value] : pairs) ++offsets[key + 1];
  for (int i = 0; i < n; ++i) offsets[i + 1] += offsets[i];
  items.resize(pairs.size());
  std::vector<int> fill(offsets.begin(), offsets.end() - 1);
  for (const auto& [key, value] : pairs) items[fill[key]++] = value;
}

}  // namespace

SurfaceMesh::SurfaceMesh(std::vector<Vec3> vertices, std::vector<Triangle> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = num_vertices();
  const int nt = num_triangles();
  if (nt == 0) throw TopologyError("mesh has no triangles");

  Vec3 lo = Vec3::Constant(std::numeric_limits<double>::max());
  Vec3 hi = -lo;
  for (const auto& p : vertices_) {
    if (!p.allFinite()) throw ParseError("non-finite vertex coordinate");
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  bbox_diagonal_ = (hi - lo).norm();
  const double min_area = std::numeric_limits<double>::epsilon() * bbox_diagonal_ * bbox_diagonal_;

  normals_.resize(nt);
  centroids_.resize(nt);
  areas_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    for (int k = 0; k < 3; ++k) {
      if (tri[k] < 0 || tri[k] >= nv)
        throw ParseError("triangle " + std::to_string(t) + " references vertex out of range");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw DegenerateError("triangle " + std::to_string(t) + " repeats a vertex");
    const Vec3& a = vertices_[tri[0]];
    const Vec3 cross = (vertices_[tri[1]] - a).cross(vertices_[tri[2]] - a);
    const double len = cross.norm();
    areas_[t] = 0.5 * len;
    if (!(areas_[t] > min_area))
      throw DegenerateError("triangle " + std::to_string(t) + " has zero area");
    normals_[t] = cross / len;
    centroids_[t] = (a + vertices_[tri[1]] + vertices_[tri[2]]) / 3.0;
    total_area_ += areas_[t];
  }

  // Every directed edge must appear exactly once and be matched by its twin.
  std::unordered_map<std::uint64_t, int> half_edges;
  half_edges.reserve(static_cast<std::size_t>(nt) * 3);
  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = triangles_[t][k];
      const int b = triangles_[t][(k + 1) % 3];
      if (!half_edges.emplace(directed_key(a, b), 3 * t + k).second)
        throw TopologyError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") is non-manifold or inconsistently oriented");
    }
  }

  neighbors_.assign(nt, {-1, -1, -1});
  triangle_edges_.assign(nt, {-1, -1, -1});
  double length_sum = 0.0;
  for (int t = 0; t < nt; ++t) {
    for (int k = 0; k < 3; ++k) {
      const int a = triangles_[t][k];
      const int b = triangles_[t][(k + 1) % 3];
      const auto twin = half_edges.find(directed_key(b, a));
      if (twin == half_edges.end())
        throw TopologyError("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                            ") has a single incident triangle; surface is open");
      const int u = twin->second / 3;
      neighbors_[t][k] = u;
      if (a < b) {
        const int e = static_cast<int>(edges_.size());
        edges_.push_back({a, b, t, u});
        triangle_edges_[t][k] = e;
        triangle_edges_[u][twin->second % 3] = e;
        length_sum += (vertices_[a] - vertices_[b]).norm();
      }
    }
  }
  average_edge_length_ = length_sum / static_cast<double>(edges_.size());

  std::vector<std::pair<int, int>> vt;
  vt.reserve(static_cast<std::size_t>(nt) * 3);
  for (int t = 0; t < nt; ++t)
    for (int v : triangles_[t]) vt.emplace_back(v, t);
  build_csr(nv, vt, vt_offsets_, vt_items_);

  std::vector<std::pair<int, int>> vv;
  vv.reserve(edges_.size() * 2);
  for (const auto& e : edges_) {
    vv.emplace_back(e.v0, e.v1);
    vv.emplace_back(e.v1, e.v0);
  }
  build_csr(nv, vv, vv_offsets_, vv_items_);
  for (int v = 0; v < nv; ++v)
    std::sort(vv_items_.begin() + vv_offsets_[v], vv_items_.begin() + vv_offsets_[v + 1]);
}

std::span<const int> SurfaceMesh::vertex_triangles(int v) const {
  return {vt_items_.data() + vt_offsets_[v], vt_items_.data() + vt_offsets_[v + 1]};
}

std::span<const int> SurfaceMesh::vertex_neighbors(int v) const {
  return {vv_items_.data() + vv_offsets_[v], vv_items_.data() + vv_offsets_[v + 1]};
}

double signed_volume(const TetMesh& mesh, const Tet& tet) {
  const Vec3& a = mesh.vertices[tet[0]];
  return (mesh.vertices[tet[1]] - a).dot((mesh.vertices[tet[2]] - a).cross(mesh.vertices[tet[3]] - a)) /
         6.0;
}

void orient_tets(TetMesh& mesh) {
  const int nv = static_cast<int>(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.tets.size(); ++i) {
    auto& tet = mesh.tets[i];
    for (int v : tet) {
      if (v < 0 || v >= nv) throw ParseError("tet " + std::to_string(i) + " references vertex out of range");
    }
    const double vol = signed_volume(mesh, tet);
    if (vol == 0.0 || !std::isfinite(vol))
      throw OrientationError("tet " + std::to_string(i) + " has zero volume");
    if (vol < 0.0) std::swap(tet[2], tet[3]);
  }
}

SurfaceMesh extract_boundary(const TetMesh& mesh) {
  // Outward faces of a positively oriented tet (a, b, c, d).
  static constexpr int kFaces[4][3] = {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
  struct FaceRecord {
    Triangle tri;
    int count = 0;
  };
  std::map<std::array<int, 3>, FaceRecord> faces;
  for (const auto& tet : mesh.tets) {
    for (const auto& f : kFaces) {
      Triangle tri{tet[f[0]], tet[f[1]], tet[f[2]]};
      std::array<int, 3> key = tri;
      std::sort(key.begin(), key.end());
      auto& rec = faces[key];
      if (rec.count++ == 0) rec.tri = tri;
    }
  }

  std::vector<int> remap(mesh.vertices.size(), -1);
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  for (const auto& [key, rec] : faces) {
    if (rec.count > 2) throw TopologyError("tet face shared by more than two tets");
    if (rec.count != 1) continue;
    Triangle tri = rec.tri;
    for (int& v : tri) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(vertices.size());
        vertices.push_back(mesh.vertices[v]);
      }
      v = remap[v];
    }
    triangles.push_back(tri);
  }
  return SurfaceMesh(std::move(vertices), std::move(triangles));
}

}  // namespace polycubify
