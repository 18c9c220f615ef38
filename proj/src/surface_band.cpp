#include "surface_band.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <queue>

namespace polycubify {

std::vector<int> surface_band(const SurfaceMesh& mesh, std::span<const int> path, double width,
                              std::span<const char> mask) {
  const int nt = mesh.num_triangles();
  auto allowed = [&](int t) { return mask.empty() || mask[t]; };
  std::vector<double> dist(nt, std::numeric_limits<double>::infinity());
  std::vector<char> forced(nt, 0);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;

  for (int v : path) {
    for (int t : mesh.vertex_triangles(v)) {
      if (!allowed(t)) continue;
      const double d = (mesh.centroid(t) - mesh.vertex(v)).norm();
      if (d < dist[t]) {
        dist[t] = d;
        queue.push({d, t});
      }
    }
  }
  if (path.size() == 1) {
    for (int t : mesh.vertex_triangles(path[0]))
      if (allowed(t)) forced[t] = 1;
  }
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const int a = path[i];
    const int b = path[i + 1];
    for (int t : mesh.vertex_triangles(a)) {
      const Triangle& tri = mesh.triangle(t);
      if (allowed(t) && std::find(tri.begin(), tri.end(), b) != tri.end()) forced[t] = 1;
    }
  }

  while (!queue.empty()) {
    const auto [d, t] = queue.top();
    queue.pop();
    if (d > dist[t] || d > width) continue;
    for (int u : mesh.neighbors(t)) {
      if (!allowed(u)) continue;
      const double du = d + (mesh.centroid(u) - mesh.centroid(t)).norm();
      if (du < dist[u]) {
        dist[u] = du;
        queue.push({du, u});
      }
    }
  }

  std::vector<int> out;
  for (int t = 0; t < nt; ++t)
    if (forced[t] || dist[t] <= width) out.push_back(t);
  return out;
}

}  // namespace polycubify
