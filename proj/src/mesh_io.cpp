#include "mesh_io.hpp"

#include "error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

namespace polycubify {
namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return std::move(ss).str();
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view token, const std::string& where) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(where + ": bad number '" + std::string(token) + "'");
  return value;
}

long long parse_int(std::string_view token, const std::string& where) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(where + ": bad integer '" + std::string(token) + "'");
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line, ++line_no);
    pos = end + 1;
  }
}

SurfaceMesh load_obj(const std::string& text, const std::string& name) {
  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) return;
    const std::string where = name + ":" + std::to_string(line_no);
    if (tokens[0] == "v") {
      if (tokens.size() < 4) throw ParseError(where + ": vertex needs 3 coordinates");
      vertices.emplace_back(parse_double(tokens[1], where), parse_double(tokens[2], where),
                            parse_double(tokens[3], where));
    } else if (tokens[0] == "f") {
      if (tokens.size() < 4) throw ParseError(where + ": face needs at least 3 vertices");
      std::vector<int> poly;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto slash = tokens[i].find('/');
        long long idx = parse_int(tokens[i].substr(0, slash), where);
        if (idx < 0) idx += static_cast<long long>(vertices.size()) + 1;
        if (idx < 1 || idx > static_cast<long long>(vertices.size()))
          throw ParseError(where + ": vertex index out of range");
        poly.push_back(static_cast<int>(idx - 1));
      }
      for (std::size_t i = 1; i + 1 < poly.size(); ++i) triangles.push_back({poly[0], poly[i], poly[i + 1]});
    }
  });
  return SurfaceMesh(std::move(vertices), std::move(triangles));
}

// Welds coincident soup vertices on a hash grid with cell size `tol`.
class VertexWelder {
 public:
  explicit VertexWelder(double tol) : tol_(tol > 0 ? tol : std::numeric_limits<double>::min()) {}

  int insert(const Vec3& p) {
    const auto c = cell(p);
    for (long long dx = -1; dx <= 1; ++dx)
      for (long long dy = -1; dy <= 1; ++dy)
        for (long long dz = -1; dz <= 1; ++dz) {
          const auto it = grid_.find(key(c[0] + dx, c[1] + dy, c[2] + dz));
          if (it == grid_.end()) continue;
          for (int v : it->second)
            if ((vertices_[v] - p).norm() <= tol_) return v;
        }
    const int id = static_cast<int>(vertices_.size());
    vertices_.push_back(p);
    grid_[key(c[0], c[1], c[2])].push_back(id);
    return id;
  }

  std::vector<Vec3> take() { return std::move(vertices_); }

 private:
  std::array<long long, 3> cell(const Vec3& p) const {
    return {static_cast<long long>(std::floor(p.x() / tol_)), static_cast<long long>(std::floor(p.y() / tol_)),
            static_cast<long long>(std::floor(p.z() / tol_))};
  }
  static std::uint64_t key(long long x, long long y, long long z) {
    std::uint64_t h = 1469598103934665603ull;
    for (long long v : {x, y, z}) {
      h ^= static_cast<std::uint64_t>(v);
      h *= 1099511628211ull;
    }
    return h;
  }

  double tol_;
  std::vector<Vec3> vertices_;
  std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

SurfaceMesh weld_soup(const std::vector<Vec3>& soup) {
  if (soup.empty() || soup.size() % 3 != 0) throw ParseError("STL contains no complete triangles");
  Vec3 lo = soup.front(), hi = soup.front();
  for (const auto& p : soup) {
    if (!p.allFinite()) throw ParseError("non-finite STL coordinate");
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  VertexWelder welder(1e-9 * (hi - lo).norm());
  std::vector<Triangle> triangles;
  triangles.reserve(soup.size() / 3);
  for (std::size_t i = 0; i < soup.size(); i += 3) {
    Triangle tri{welder.insert(soup[i]), welder.insert(soup[i + 1]), welder.insert(soup[i + 2])};
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2])
      throw DegenerateError("STL triangle " + std::to_string(i / 3) + " collapses after vertex merge");
    triangles.push_back(tri);
  }
  return SurfaceMesh(welder.take(), std::move(triangles));
}

SurfaceMesh load_stl(const std::string& data, const std::string& name) {
  if (data.size() >= 84) {
    std::uint32_t count = 0;
    std::memcpy(&count, data.data() + 80, sizeof(count));
    if (data.size() == 84 + 50ull * count) {
      std::vector<Vec3> soup;
      soup.reserve(3ull * count);
      for (std::uint32_t i = 0; i < count; ++i) {
        const char* rec = data.data() + 84 + 50ull * i + 12;  // skip stored normal
        for (int k = 0; k < 3; ++k) {
          float xyz[3];
          std::memcpy(xyz, rec + 12 * k, sizeof(xyz));
          soup.emplace_back(xyz[0], xyz[1], xyz[2]);
        }
      }
      return weld_soup(soup);
    }
  }
  if (data.rfind("solid", 0) != 0) throw ParseError(name + ": neither binary nor ASCII STL");
  std::vector<Vec3> soup;
  for_each_line(data, [&](std::string_view line, std::size_t line_no) {
    const auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0] != "vertex") return;
    const std::string where = name + ":" + std::to_string(line_no);
    if (tokens.size() < 4) throw ParseError(where + ": vertex needs 3 coordinates");
    soup.emplace_back(parse_double(tokens[1], where), parse_double(tokens[2], where),
                      parse_double(tokens[3], where));
  });
  return weld_soup(soup);
}

SurfaceMesh load_ply(const std::string& text, const std::string& name) {
  struct Element {
    std::string name;
    long long count = 0;
    std::vector<std::string> properties;  // "list" marks a list property
  };
  std::vector<Element> elements;
  std::vector<std::string_view> lines;
  for_each_line(text, [&](std::string_view line, std::size_t) { lines.push_back(line); });
  if (lines.empty() || split_ws(lines[0]).empty() || split_ws(lines[0])[0] != "ply")
    throw ParseError(name + ": missing 'ply' magic");

  std::size_t i = 1;
  for (; i < lines.size(); ++i) {
    const auto tokens = split_ws(lines[i]);
    if (tokens.empty() || tokens[0] == "comment" || tokens[0] == "obj_info") continue;
    const std::string where = name + ":" + std::to_string(i + 1);
    if (tokens[0] == "format") {
      if (tokens.size() < 2 || tokens[1] != "ascii") throw ParseError(where + ": only ASCII PLY is supported");
    } else if (tokens[0] == "element") {
      if (tokens.size() < 3) throw ParseError(where + ": malformed element line");
      elements.push_back({std::string(tokens[1]), parse_int(tokens[2], where), {}});
    } else if (tokens[0] == "property") {
      if (elements.empty() || tokens.size() < 3) throw ParseError(where + ": malformed property line");
      elements.back().properties.emplace_back(tokens[1] == "list" ? "list" : std::string(tokens.back()));
    } else if (tokens[0] == "end_header") {
      ++i;
      break;
    } else {
      throw ParseError(where + ": unexpected header line");
    }
  }

  std::vector<Vec3> vertices;
  std::vector<Triangle> triangles;
  for (const auto& el : elements) {
    int ix = -1, iy = -1, iz = -1;
    for (std::size_t p = 0; p < el.properties.size(); ++p) {
      if (el.properties[p] == "x") ix = static_cast<int>(p);
      if (el.properties[p] == "y") iy = static_cast<int>(p);
      if (el.properties[p] == "z") iz = static_cast<int>(p);
    }
    for (long long r = 0; r < el.count; ++r, ++i) {
      // Skip blank lines inside the body.
      while (i < lines.size() && split_ws(lines[i]).empty()) ++i;
      if (i >= lines.size()) throw ParseError(name + ": truncated " + el.name + " data");
      const auto tokens = split_ws(lines[i]);
      const std::string where = name + ":" + std::to_string(i + 1);
      if (el.name == "vertex") {
        if (ix < 0 || iy < 0 || iz < 0) throw ParseError(name + ": vertex element lacks x/y/z");
        const int need = std::max({ix, iy, iz});
        if (static_cast<int>(tokens.size()) <= need) throw ParseError(where + ": short vertex record");
        vertices.emplace_back(parse_double(tokens[ix], where), parse_double(tokens[iy], where),
                              parse_double(tokens[iz], where));
      } else if (el.name == "face") {
        const long long n = parse_int(tokens[0], where);
        if (n < 3 || static_cast<long long>(tokens.size()) < n + 1) throw ParseError(where + ": malformed face");
        std::vector<int> poly;
        for (long long k = 1; k <= n; ++k) poly.push_back(static_cast<int>(parse_int(tokens[k], where)));
        for (std::size_t k = 1; k + 1 < poly.size(); ++k) triangles.push_back({poly[0], poly[k], poly[k + 1]});
      }
    }
  }
  return SurfaceMesh(std::move(vertices), std::move(triangles));
}

}  // namespace

SurfaceFormat surface_format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".obj") return SurfaceFormat::kObj;
  if (ext == ".stl") return SurfaceFormat::kStl;
  if (ext == ".ply") return SurfaceFormat::kPly;
  throw InvalidArgumentError("unsupported surface extension '" + ext + "'");
}

std::string_view format_name(SurfaceFormat format) {
  switch (format) {
    case SurfaceFormat::kObj: return "obj";
    case SurfaceFormat::kStl: return "stl";
    case SurfaceFormat::kPly: return "ply";
  }
  return "unknown";
}

SurfaceMesh load_surface(const std::filesystem::path& path, SurfaceFormat format) {
  const std::string data = read_file(path);
  const std::string name = path.filename().string();
  switch (format) {
    case SurfaceFormat::kObj: return load_obj(data, name);
    case SurfaceFormat::kStl: return load_stl(data, name);
    case SurfaceFormat::kPly: return load_ply(data, name);
  }
  throw InvalidArgumentError("unknown surface format");
}

TetMesh load_tet_medit(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const std::string name = path.filename().string();

  // MEDIT is whitespace-separated; '#' starts a comment.
  std::vector<std::string_view> tokens;
  for_each_line(text, [&](std::string_view line, std::size_t) {
    const auto hash = line.find('#');
    for (auto tok : split_ws(line.substr(0, hash))) tokens.push_back(tok);
  });

  // Integer fields per record for the sections we skip.
  static const std::unordered_map<std::string_view, int> kSkipWidths = {
      {"Edges", 3},       {"Triangles", 4}, {"Quadrilaterals", 5}, {"Hexahedra", 9},
      {"Corners", 1},     {"Ridges", 1},    {"RequiredVertices", 1}, {"RequiredEdges", 1},
      {"Normals", 3},     {"Tangents", 3},  {"NormalAtVertices", 2}, {"TangentAtVertices", 2},
  };

  TetMesh mesh;
  bool have_vertices = false;
  bool have_tets = false;
  std::size_t pos = 0;
  auto next = [&](const char* what) -> std::string_view {
    if (pos >= tokens.size()) throw ParseError(name + ": unexpected end of file reading " + what);
    return tokens[pos++];
  };

  while (pos < tokens.size()) {
    const std::string_view kw = tokens[pos++];
    if (kw == "MeshVersionFormatted") {
      next("version");
    } else if (kw == "Dimension") {
      if (parse_int(next("dimension"), name) != 3) throw ParseError(name + ": only 3D meshes are supported");
    } else if (kw == "Vertices") {
      const long long n = parse_int(next("vertex count"), name);
      mesh.vertices.reserve(n);
      for (long long i = 0; i < n; ++i) {
        const double x = parse_double(next("vertex"), name);
        const double y = parse_double(next("vertex"), name);
        const double z = parse_double(next("vertex"), name);
        next("vertex reference");
        mesh.vertices.emplace_back(x, y, z);
      }
      have_vertices = true;
    } else if (kw == "Tetrahedra") {
      const long long n = parse_int(next("tet count"), name);
      mesh.tets.reserve(n);
      for (long long i = 0; i < n; ++i) {
        Tet tet;
        for (int& v : tet) v = static_cast<int>(parse_int(next("tet"), name)) - 1;
        next("tet reference");
        mesh.tets.push_back(tet);
      }
      have_tets = true;
    } else if (kw == "End") {
      break;
    } else if (auto it = kSkipWidths.find(kw); it != kSkipWidths.end()) {
      const long long n = parse_int(next("record count"), name);
      for (long long i = 0; i < n * it->second; ++i) next(it->first.data());
    } else {
      throw ParseError(name + ": unknown keyword '" + std::string(kw) + "'");
    }
  }
  if (!have_vertices) throw ParseError(name + ": missing Vertices section");
  if (!have_tets) throw ParseError(name + ": missing Tetrahedra section");
  orient_tets(mesh);
  return mesh;
}

SurfaceMesh load_mesh(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".mesh") return extract_boundary(load_tet_medit(path));
  return load_surface(path, surface_format_from_extension(path));
}

void write_obj(const std::filesystem::path& path, std::span<const Vec3> vertices,
               std::span<const Triangle> triangles) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  for (const auto& p : vertices) out << "v " << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (const auto& t : triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

void write_face_colored_ply(const std::filesystem::path& path, const SurfaceMesh& mesh,
                            std::span<const Rgb> face_colors) {
  if (static_cast<int>(face_colors.size()) != mesh.num_triangles())
    throw InvalidArgumentError("one color per face required");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out.precision(17);
  out << "ply\nformat ascii 1.0\n"
      << "element vertex " << mesh.num_vertices() << "\n"
      << "property double x\nproperty double y\nproperty double z\n"
      << "element face " << mesh.num_triangles() << "\n"
      << "property list uchar int vertex_indices\n"
      << "property uchar red\nproperty uchar green\nproperty uchar blue\n"
      << "end_header\n";
  for (const auto& p : mesh.vertices()) out << p.x() << ' ' << p.y() << ' ' << p.z() << '\n';
  for (int t = 0; t < mesh.num_triangles(); ++t) {
    const auto& tri = mesh.triangle(t);
    const auto& c = face_colors[t];
    out << "3 " << tri[0] << ' ' << tri[1] << ' ' << tri[2] << ' ' << int(c[0]) << ' ' << int(c[1]) << ' '
        << int(c[2]) << '\n';
  }
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace polycubify
