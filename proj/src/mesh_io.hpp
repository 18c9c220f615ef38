#pragma once

#include "mesh.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>

namespace polycubify {

enum class SurfaceFormat { kObj, kStl, kPly };

/// Loads a closed triangle surface. STL triangle soup is welded with a
/// tolerance of 1e-9 of the bounding-box diagonal.
SurfaceMesh load_surface(const std::filesystem::path& path, SurfaceFormat format);

/// ASCII MEDIT `.mesh` with a `Tetrahedra` section. Tets are reoriented to
/// positive volume.
TetMesh load_tet_medit(const std::filesystem::path& path);

/// Dispatches on the file extension (.obj, .stl, .ply, .mesh). MEDIT input
/// goes through extract_boundary.
SurfaceMesh load_mesh(const std::filesystem::path& path);

SurfaceFormat surface_format_from_extension(const std::filesystem::path& path);
std::string_view format_name(SurfaceFormat format);

void write_obj(const std::filesystem::path& path, std::span<const Vec3> vertices,
               std::span<const Triangle> triangles);

using Rgb = std::array<std::uint8_t, 3>;

/// ASCII PLY with one RGB color per face.
void write_face_colored_ply(const std::filesystem::path& path, const SurfaceMesh& mesh,
                            std::span<const Rgb> face_colors);

}  // namespace polycubify
