#pragma once

#include "fast_polycube.hpp"
#include "mesh.hpp"

#include <Eigen/Core>

namespace polycubify {

inline constexpr double kDistortionClamp = 1e6;

struct SingularValues2 {
  double s1 = 0.0;  // largest
  double s2 = 0.0;
};

/// Closed-form singular values of a 2x2 matrix.
SingularValues2 singular_values(const Eigen::Matrix2d& j);

/// s1 + s2 + 1/(s1 s2) + s1/s2 + s2/s1 - 4 of the Jacobian; returns the clamp
/// for flipped, collapsed or overly stretched maps.
double workability_distortion(const Eigen::Matrix2d& j);

/// (s1 s2 + 1/(s1 s2)) / 2, with the same treatment of collapsed maps.
double area_distortion_density(const Eigen::Matrix2d& j);

/// Jacobian from the input triangle (in its own orthonormal frame) to its
/// image projected on the plane orthogonal to the triangle's label, with the
/// 2D frame oriented so that a map preserving the label side has det > 0.
Eigen::Matrix2d triangle_jacobian(const SurfaceMesh& mesh, const FastPolycube& pc, int t);

double triangle_distortion(const SurfaceMesh& mesh, const FastPolycube& pc, int t);

/// Area-weighted mean of squared per-triangle distortion.
double workability(const SurfaceMesh& mesh, const FastPolycube& pc);

/// Area-weighted mean area distortion; 1 for an isometry.
double area_distortion(const SurfaceMesh& mesh, const FastPolycube& pc);

}  // namespace polycubify
