#include "distortion.hpp"

#include <Eigen/LU>

#include <cmath>

namespace polycubify {

SingularValues2 singular_values(const Eigen::Matrix2d& j) {
  const double a = j(0, 0), b = j(0, 1), c = j(1, 0), d = j(1, 1);
  const double e = 0.5 * (a + d);
  const double f = 0.5 * (a - d);
  const double g = 0.5 * (c + b);
  const double h = 0.5 * (c - b);
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, g);
  return {q + r, std::abs(q - r)};
}

double workability_distortion(const Eigen::Matrix2d& j) {
  if (!j.allFinite() || j.determinant() < 0.0) return kDistortionClamp;
  const SingularValues2 s = singular_values(j);
  if (s.s2 < 1e-9) return kDistortionClamp;
  const double ew = s.s1 + s.s2 + 1.0 / (s.s1 * s.s2) + s.s1 / s.s2 + s.s2 / s.s1 - 4.0;
  if (!(ew <= kDistortionClamp)) return kDistortionClamp;
  return ew;
}

double area_distortion_density(const Eigen::Matrix2d& j) {
  if (!j.allFinite()) return kDistortionClamp;
  const SingularValues2 s = singular_values(j);
  if (s.s2 < 1e-9) return kDistortionClamp;
  const double area_ratio = s.s1 * s.s2;
  const double da = 0.5 * (area_ratio + 1.0 / area_ratio);
  return da <= kDistortionClamp ? da : kDistortionClamp;
}

Eigen::Matrix2d triangle_jacobian(const SurfaceMesh& mesh, const FastPolycube& pc, int t) {
  const Triangle& tri = mesh.triangle(t);
  const Vec3& p0 = mesh.vertex(tri[0]);
  const Vec3 e1 = (mesh.vertex(tri[1]) - p0).normalized();
  const Vec3 e2 = mesh.normal(t).cross(e1);
  Eigen::Matrix2d q;
  for (int k = 1; k <= 2; ++k) {
    const Vec3 d = mesh.vertex(tri[k]) - p0;
    q(0, k - 1) = d.dot(e1);
    q(1, k - 1) = d.dot(e2);
  }

  // (u, v, label direction) is right-handed.
  const Label l = pc.triangle_labels[t];
  const int a = axis(l);
  int u = (a + 1) % 3;
  int v = (a + 2) % 3;
  if (!is_positive(l)) std::swap(u, v);
  const Vec3& x0 = pc.positions[tri[0]];
  Eigen::Matrix2d r;
  for (int k = 1; k <= 2; ++k) {
    const Vec3 d = pc.positions[tri[k]] - x0;
    r(0, k - 1) = d[u];
    r(1, k - 1) = d[v];
  }
  return r * q.inverse();
}

double triangle_distortion(const SurfaceMesh& mesh, const FastPolycube& pc, int t) {
  return workability_distortion(triangle_jacobian(mesh, pc, t));
}

double workability(const SurfaceMesh& mesh, const FastPolycube& pc) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const double ew = triangle_distortion(mesh, pc, t);
    sum += mesh.area(t) * ew * ew;
  }
  return sum / mesh.total_area();
}

double area_distortion(const SurfaceMesh& mesh, const FastPolycube& pc) {
  double sum = 0.0;
  for (int t = 0; t < mesh.num_triangles(); ++t)
    sum += mesh.area(t) * area_distortion_density(triangle_jacobian(mesh, pc, t));
  return sum / mesh.total_area();
}

}  // namespace polycubify
