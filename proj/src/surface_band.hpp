#pragma once

#include "mesh.hpp"

#include <span>
#include <vector>

namespace polycubify {

/// Triangles within approximate geodesic distance `width` of a vertex path.
///
/// Distances grow from the triangles touching the path (centroid to nearest
/// path vertex) across edge-adjacent centroids. Triangles owning an edge of
/// the path, or touching a single-vertex path, are always included. With a
/// non-empty `mask`, only triangles whose mask entry is set are visited.
/// Returns ascending triangle ids.
std::vector<int> surface_band(const SurfaceMesh& mesh, std::span<const int> path, double width,
                              std::span<const char> mask = {});

}  // namespace polycubify
