#include "labeling.hpp"

#include "error.hpp"

#include <fstream>
#include <sstream>
#include <string>

namespace polycubify {

std::string_view label_name(Label l) {
  static constexpr std::string_view kNames[kNumLabels] = {"+X", "-X", "+Y", "-Y", "+Z", "-Z"};
  return kNames[code(l)];
}

Label best_aligned_label(const Vec3& n) {
  Label best = Label::kPosX;
  double best_dot = n.x();
  for (Label l : kAllLabels) {
    const double d = n.dot(direction(l));
    if (d > best_dot) {
      best_dot = d;
      best = l;
    }
  }
  return best;
}

Labeling::Labeling(std::vector<Label> labels) : labels_(std::move(labels)), stamps_(labels_.size(), 0) {}

Labeling::Labeling(std::vector<Label> labels, std::vector<int> stamps)
    : labels_(std::move(labels)), stamps_(std::move(stamps)) {
  if (labels_.size() != stamps_.size()) throw InvalidArgumentError("labels and stamps differ in length");
}

std::uint64_t Labeling::digest() const {
  std::uint64_t h = 1469598103934665603ull;
  for (Label l : labels_) {
    h ^= static_cast<std::uint64_t>(code(l));
    h *= 1099511628211ull;
  }
  return h;
}

Labeling naive_normal_labeling(const SurfaceMesh& mesh) {
  std::vector<Label> labels(mesh.num_triangles());
  for (int t = 0; t < mesh.num_triangles(); ++t) labels[t] = best_aligned_label(mesh.normal(t));
  return Labeling(std::move(labels));
}

Labeling parse_labeling(std::string_view text, int expected_size) {
  std::vector<Label> labels;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (line.empty()) {
      if (pos >= text.size()) break;
      throw ParseError("labeling line " + std::to_string(line_no) + " is empty");
    }
    if (line.size() != 1 || line[0] < '0' || line[0] > '5')
      throw ParseError("labeling line " + std::to_string(line_no) + ": expected an integer in 0..5, got '" +
                       std::string(line) + "'");
    labels.push_back(label_from_code(line[0] - '0'));
  }
  if (expected_size >= 0 && static_cast<int>(labels.size()) != expected_size)
    throw InvalidArgumentError("labeling has " + std::to_string(labels.size()) + " entries but the mesh has " +
                               std::to_string(expected_size) + " triangles");
  return Labeling(std::move(labels));
}

Labeling read_labeling(const std::filesystem::path& path, int expected_size) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_labeling(ss.str(), expected_size);
}

void write_labeling(const std::filesystem::path& path, const Labeling& labeling) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  for (Label l : labeling.labels()) out << code(l) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace polycubify
