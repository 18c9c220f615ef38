#pragma once

#include "alpha_expansion.hpp"
#include "labeling.hpp"
#include "mesh.hpp"

namespace polycubify {

inline constexpr double kDefaultUnaryBinaryRatio = 3.0;

/// Cost of giving label l to triangle t: ratio * area_t / avg_area * (1 - n_t . d_l).
double labeling_unary(const SurfaceMesh& mesh, int t, Label l, double ratio);

/// Weight of the Potts term between edge-adjacent triangles; 1 for coplanar
/// neighbors, decaying with the angle between their normals.
double labeling_pairwise_weight(const Vec3& n1, const Vec3& n2);

/// Six-label problem on the triangle dual graph, one pairwise term per edge.
MultiLabelProblem build_labeling_problem(const SurfaceMesh& mesh, double ratio);

/// Alpha-expansion started from the naive normal labeling. Stamps are 0.
Labeling graphcut_initial_labeling(const SurfaceMesh& mesh, double ratio = kDefaultUnaryBinaryRatio);

}  // namespace polycubify
