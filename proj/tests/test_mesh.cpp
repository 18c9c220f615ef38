#include "error.hpp"
#include "labeling.hpp"
#include "mesh.hpp"
#include "mesh_io.hpp"
#include "scratch.hpp"
#include "shapes.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace polycubify;

namespace {

const char* kCubeObj =
    "# unit cube\n"
    "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n"
    "f 1 3 2\nf 1 4 3\n"
    "f 5 6 7\nf 5 7 8\n"
    "f 1 2 6\nf 1 6 5\n"
    "f 2 3 7\nf 2 7 6\n"
    "f 3 4 8\nf 3 8 7\n"
    "f 4 1 5\nf 4 5 8\n";

std::string cube_stl() {
  const SurfaceMesh m = shapes::unit_cube();
  std::string s = "solid cube\n";
  for (int t = 0; t < m.num_triangles(); ++t) {
    s += "facet normal 0 0 0\nouter loop\n";
    for (int v : m.triangle(t)) {
      const Vec3& p = m.vertex(v);
      s += "vertex " + std::to_string(p.x()) + " " + std::to_string(p.y()) + " " + std::to_string(p.z()) + "\n";
    }
    s += "endloop\nendfacet\n";
  }
  return s + "endsolid cube\n";
}

// Kuhn split of the unit cube along its main diagonal.
TetMesh six_tet_cube() {
  TetMesh tm;
  for (int i = 0; i < 8; ++i) tm.vertices.emplace_back(i & 1, (i >> 1) & 1, (i >> 2) & 1);
  int perm[3] = {0, 1, 2};
  do {
    const int a = 1 << perm[0];
    const int b = a | (1 << perm[1]);
    tm.tets.push_back({0, a, b, 7});
  } while (std::next_permutation(perm, perm + 3));
  return tm;
}

Vec3 area_weighted_normal_sum(const SurfaceMesh& m) {
  Vec3 s = Vec3::Zero();
  for (int t = 0; t < m.num_triangles(); ++t) s += m.area(t) * m.normal(t);
  return s;
}

void check_surface_invariants(const SurfaceMesh& m) {
  CHECK(area_weighted_normal_sum(m).norm() <= 1e-6 * m.total_area());
  // Every edge has two triangles traversing it in opposite directions.
  std::map<std::pair<int, int>, int> directed;
  for (const Triangle& t : m.triangles())
    for (int k = 0; k < 3; ++k) ++directed[{t[k], t[(k + 1) % 3]}];
  for (const auto& [e, n] : directed) {
    CHECK(n == 1);
    CHECK(directed.count({e.second, e.first}) == 1);
  }
  double len = 0.0;
  for (const MeshEdge& e : m.edges()) {
    len += (m.vertex(e.v0) - m.vertex(e.v1)).norm();
    CHECK(e.t0 >= 0);
    CHECK(e.t1 >= 0);
  }
  CHECK(m.average_edge_length() == doctest::Approx(len / m.num_edges()).epsilon(1e-12));
  for (int t = 0; t < m.num_triangles(); ++t) {
    CHECK(std::abs(m.normal(t).norm() - 1.0) < 1e-9);
    CHECK(m.area(t) > 0.0);
  }
}

}  // namespace

TEST_CASE("obj cube loads with the expected area") {
  const auto dir = scratch_dir("mesh");
  write_text(dir / "cube.obj", kCubeObj);
  const SurfaceMesh m = load_mesh(dir / "cube.obj");
  CHECK(m.num_vertices() == 8);
  CHECK(m.num_triangles() == 12);
  CHECK(m.num_edges() == 18);
  CHECK(m.total_area() == doctest::Approx(6.0).epsilon(1e-12));
  check_surface_invariants(m);
}

TEST_CASE("quads in obj are triangulated") {
  const auto dir = scratch_dir("mesh-quad");
  write_text(dir / "q.obj",
             "v 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nv 0 0 1\nv 1 0 1\nv 1 1 1\nv 0 1 1\n"
             "f 1 4 3 2\nf 5 6 7 8\nf 1 2 6 5\nf 2 3 7 6\nf 3 4 8 7\nf 4 1 5 8\n");
  const SurfaceMesh m = load_mesh(dir / "q.obj");
  CHECK(m.num_triangles() == 12);
  check_surface_invariants(m);
}

TEST_CASE("stl soup is welded") {
  const auto dir = scratch_dir("mesh-stl");
  write_text(dir / "cube.stl", cube_stl());
  const SurfaceMesh m = load_mesh(dir / "cube.stl");
  CHECK(m.num_vertices() == 8);
  CHECK(m.num_triangles() == 12);
  check_surface_invariants(m);
}

TEST_CASE("binary stl") {
  const auto dir = scratch_dir("mesh-binstl");
  const SurfaceMesh cube = shapes::unit_cube();
  std::string data(80, ' ');
  const std::uint32_t n = cube.num_triangles();
  data.append(reinterpret_cast<const char*>(&n), 4);
  for (int t = 0; t < cube.num_triangles(); ++t) {
    float rec[12] = {};
    for (int k = 0; k < 3; ++k)
      for (int c = 0; c < 3; ++c) rec[3 + 3 * k + c] = static_cast<float>(cube.vertex(cube.triangle(t)[k])[c]);
    data.append(reinterpret_cast<const char*>(rec), sizeof rec);
    data.append(2, '\0');
  }
  write_text(dir / "cube.stl", data);
  const SurfaceMesh m = load_mesh(dir / "cube.stl");
  CHECK(m.num_vertices() == 8);
  CHECK(m.total_area() == doctest::Approx(6.0));
}

TEST_CASE("ascii ply") {
  const auto dir = scratch_dir("mesh-ply");
  const SurfaceMesh cube = shapes::unit_cube();
  std::string s = "ply\nformat ascii 1.0\nelement vertex 8\nproperty float x\nproperty float y\nproperty float z\n"
                  "element face 12\nproperty list uchar int vertex_indices\nend_header\n";
  for (const Vec3& p : cube.vertices())
    s += std::to_string(p.x()) + " " + std::to_string(p.y()) + " " + std::to_string(p.z()) + "\n";
  for (const Triangle& t : cube.triangles())
    s += "3 " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " + std::to_string(t[2]) + "\n";
  write_text(dir / "cube.ply", s);
  const SurfaceMesh m = load_mesh(dir / "cube.ply");
  CHECK(m.num_triangles() == 12);
  check_surface_invariants(m);
}

TEST_CASE("load errors") {
  const auto dir = scratch_dir("mesh-err");
  write_text(dir / "tri.obj", "v 0 0 0\nv 1 0 0\nv 0 1 0\nf 1 2 3\n");
  CHECK_THROWS_AS(load_mesh(dir / "tri.obj"), TopologyError);
  write_text(dir / "bad.obj", "v 0 0 zero\n");
  CHECK_THROWS_AS(load_mesh(dir / "bad.obj"), ParseError);
  write_text(dir / "range.obj", "v 0 0 0\nf 1 2 3\n");
  CHECK_THROWS_AS(load_mesh(dir / "range.obj"), ParseError);
  CHECK_THROWS_AS(load_mesh(dir / "missing.obj"), IoError);
  write_text(dir / "x.xyz", "");
  CHECK_THROWS_AS(load_mesh(dir / "x.xyz"), InvalidArgumentError);

  // Collinear triangle inside an otherwise closed surface.
  std::vector<Vec3> v = {{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(SurfaceMesh(v, {{0, 1, 2}, {0, 2, 3}, {0, 3, 1}, {1, 3, 2}}), DegenerateError);

  // Two cubes sharing one edge are not edge-manifold.
  const SurfaceMesh a = shapes::unit_cube();
  std::vector<Vec3> verts(a.vertices().begin(), a.vertices().end());
  std::vector<Triangle> tris(a.triangles().begin(), a.triangles().end());
  std::map<int, int> remap;
  for (int i = 0; i < a.num_vertices(); ++i) {
    const Vec3 p = a.vertex(i) + Vec3(1, 1, 0);
    int found = -1;
    for (int j = 0; j < a.num_vertices(); ++j)
      if ((a.vertex(j) - p).norm() < 1e-12) found = j;
    if (found < 0) {
      found = static_cast<int>(verts.size());
      verts.push_back(p);
    }
    remap[i] = found;
  }
  for (const Triangle& t : a.triangles()) tris.push_back({remap[t[0]], remap[t[1]], remap[t[2]]});
  CHECK_THROWS_AS(SurfaceMesh(verts, tris), TopologyError);

  // Inconsistent orientation.
  std::vector<Triangle> flipped(a.triangles().begin(), a.triangles().end());
  std::swap(flipped[0][1], flipped[0][2]);
  CHECK_THROWS_AS(SurfaceMesh({a.vertices().begin(), a.vertices().end()}, flipped), TopologyError);
}

TEST_CASE("generated fixtures are closed and consistently oriented") {
  check_surface_invariants(shapes::grid_cube(4));
  check_surface_invariants(shapes::l_block(2));
  check_surface_invariants(shapes::u_tube());
  check_surface_invariants(shapes::thin_wedge());
  check_surface_invariants(shapes::single_tet());
  const SurfaceMesh ico = shapes::icosphere(3);
  CHECK(ico.num_triangles() == 1280);
  check_surface_invariants(ico);
}

TEST_CASE("medit single tet") {
  const auto dir = scratch_dir("medit");
  write_text(dir / "tet.mesh",
             "MeshVersionFormatted 1\nDimension 3\nVertices\n4\n0 0 0 0\n1 0 0 0\n0 1 0 0\n0 0 1 0\n"
             "Tetrahedra\n1\n1 2 3 4 0\nEnd\n");
  const TetMesh tm = load_tet_medit(dir / "tet.mesh");
  CHECK(tm.tets.size() == 1);
  CHECK(signed_volume(tm, tm.tets[0]) > 0.0);
  const SurfaceMesh m = extract_boundary(tm);
  CHECK(m.num_triangles() == 4);
  const Vec3 center(0.25, 0.25, 0.25);
  for (int t = 0; t < 4; ++t) CHECK((m.centroid(t) - center).dot(m.normal(t)) > 0.0);
  const SurfaceMesh via_load = load_mesh(dir / "tet.mesh");
  CHECK(via_load.num_triangles() == 4);
}

TEST_CASE("medit errors") {
  const auto dir = scratch_dir("medit-err");
  write_text(dir / "a.mesh", "MeshVersionFormatted 1\nDimension 3\nVertices\n1\n0 0 0 0\nEnd\n");
  CHECK_THROWS_AS(load_tet_medit(dir / "a.mesh"), ParseError);
  write_text(dir / "b.mesh",
             "MeshVersionFormatted 1\nDimension 3\nVertices\n4\n0 0 0 0\n1 0 0 0\n2 0 0 0\n0 0 1 0\n"
             "Tetrahedra\n1\n1 2 3 4 0\nEnd\n");
  CHECK_THROWS_AS(load_tet_medit(dir / "b.mesh"), OrientationError);
}

TEST_CASE("boundary of tet assemblies") {
  TetMesh cube = six_tet_cube();
  orient_tets(cube);
  const SurfaceMesh m = extract_boundary(cube);
  CHECK(m.num_triangles() == 12);
  CHECK(m.total_area() == doctest::Approx(6.0));
  check_surface_invariants(m);

  TetMesh two;
  two.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  two.tets = {{0, 1, 2, 3}, {1, 2, 3, 4}};
  orient_tets(two);
  const SurfaceMesh b = extract_boundary(two);
  CHECK(b.num_triangles() == 6);
  check_surface_invariants(b);
}

TEST_CASE("obj writer round trip") {
  const auto dir = scratch_dir("objw");
  const SurfaceMesh m = shapes::l_block(2);
  write_obj(dir / "l.obj", m.vertices(), m.triangles());
  const SurfaceMesh back = load_mesh(dir / "l.obj");
  CHECK(back.num_triangles() == m.num_triangles());
  CHECK(back.total_area() == doctest::Approx(m.total_area()));
}

TEST_CASE("naive labeling") {
  const Labeling l = naive_normal_labeling(shapes::unit_cube());
  int count[6] = {};
  for (Label x : l.labels()) ++count[code(x)];
  for (int c = 0; c < 6; ++c) CHECK(count[c] == 2);

  CHECK(best_aligned_label(Vec3(1, 0, 0)) == Label::kPosX);
  CHECK(best_aligned_label(Vec3(1, 1, 0).normalized()) == Label::kPosX);
  CHECK(best_aligned_label(Vec3(0, -1, 1).normalized()) == Label::kNegY);
  CHECK(best_aligned_label(Vec3(0.1, 0.2, -0.9)) == Label::kNegZ);
}

TEST_CASE("label algebra") {
  for (Label l : kAllLabels) {
    CHECK(opposite(opposite(l)) == l);
    CHECK(axis(opposite(l)) == axis(l));
    CHECK(direction(l).dot(direction(opposite(l))) == -1.0);
    CHECK(make_label(axis(l), is_positive(l)) == l);
  }
}

TEST_CASE("labeling files") {
  const auto dir = scratch_dir("labels");
  const SurfaceMesh m = shapes::grid_cube(2);
  const Labeling l = naive_normal_labeling(m);
  write_labeling(dir / "a.txt", l);
  const Labeling back = read_labeling(dir / "a.txt", m.num_triangles());
  CHECK(back.same_labels(l));
  CHECK(back.digest() == l.digest());
  CHECK_THROWS_AS(parse_labeling("0\n7\n"), ParseError);
  CHECK_THROWS_AS(parse_labeling("0\nx\n"), ParseError);
  CHECK_THROWS_AS(parse_labeling("0\n1\n", 3), InvalidArgumentError);
  CHECK(parse_labeling("0\n1\n5\n").size() == 3);
  CHECK_THROWS_AS(read_labeling(dir / "none.txt"), IoError);
}

TEST_CASE("stamps follow relabels only") {
  Labeling l(std::vector<Label>(4, Label::kPosX));
  l.set(1, Label::kPosX, 5);
  CHECK(l.stamp(1) == 0);
  l.set(2, Label::kNegY, 7);
  CHECK(l.stamp(2) == 7);
  CHECK(l[2] == Label::kNegY);
}

TEST_CASE("translation leaves derived quantities unchanged") {
  const SurfaceMesh a = shapes::icosphere(2);
  const SurfaceMesh b = shapes::transformed(a, [](const Vec3& p) { return Vec3(p + Vec3(10, -3, 7)); });
  CHECK(b.total_area() == doctest::Approx(a.total_area()));
  CHECK(b.average_edge_length() == doctest::Approx(a.average_edge_length()));
  for (int t = 0; t < a.num_triangles(); ++t) CHECK((a.normal(t) - b.normal(t)).norm() < 1e-9);
}
