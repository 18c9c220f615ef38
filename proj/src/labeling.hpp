#pragma once

#include "mesh.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

namespace polycubify {

/// One of the six signed axis directions. Codes are part of the labeling
/// file format.
enum class Label : std::uint8_t { kPosX = 0, kNegX = 1, kPosY = 2, kNegY = 3, kPosZ = 4, kNegZ = 5 };

inline constexpr int kNumLabels = 6;
inline constexpr std::array<Label, kNumLabels> kAllLabels = {Label::kPosX, Label::kNegX, Label::kPosY,
                                                             Label::kNegY, Label::kPosZ, Label::kNegZ};

constexpr int code(Label l) { return static_cast<int>(l); }
constexpr Label label_from_code(int c) { return static_cast<Label>(c); }
constexpr int axis(Label l) { return code(l) / 2; }
constexpr Label opposite(Label l) { return label_from_code(code(l) ^ 1); }
constexpr bool is_positive(Label l) { return (code(l) & 1) == 0; }
constexpr Label make_label(int axis_index, bool positive) { return label_from_code(2 * axis_index + (positive ? 0 : 1)); }

inline Vec3 direction(Label l) {
  Vec3 d = Vec3::Zero();
  d[axis(l)] = is_positive(l) ? 1.0 : -1.0;
  return d;
}

std::string_view label_name(Label l);

/// Label whose direction maximizes dot(n, direction); ties go to the lowest code.
Label best_aligned_label(const Vec3& n);

/// Per-triangle labels plus the generation at which each label last changed.
class Labeling {
 public:
  Labeling() = default;
  explicit Labeling(std::vector<Label> labels);
  Labeling(std::vector<Label> labels, std::vector<int> stamps);

  int size() const { return static_cast<int>(labels_.size()); }
  Label operator[](int t) const { return labels_[t]; }
  int stamp(int t) const { return stamps_[t]; }

  /// Relabels t and stamps it with `generation`; no-op when the label is unchanged.
  void set(int t, Label l, int generation) {
    if (labels_[t] != l) {
      labels_[t] = l;
      stamps_[t] = generation;
    }
  }
  void set_stamp(int t, int generation) { stamps_[t] = generation; }

  std::span<const Label> labels() const { return labels_; }
  std::span<const int> stamps() const { return stamps_; }

  bool same_labels(const Labeling& other) const { return labels_ == other.labels_; }
  /// FNV-1a over the label vector; stamps do not participate.
  std::uint64_t digest() const;

  friend bool operator==(const Labeling&, const Labeling&) = default;

 private:
  std::vector<Label> labels_;
  std::vector<int> stamps_;
};

Labeling naive_normal_labeling(const SurfaceMesh& mesh);

/// Text format: one label code (0..5) per line, line i for triangle i.
/// Throws ParseError on malformed content and InvalidArgumentError when the
/// line count differs from `expected_size` (skipped when negative).
Labeling read_labeling(const std::filesystem::path& path, int expected_size = -1);
Labeling parse_labeling(std::string_view text, int expected_size = -1);
void write_labeling(const std::filesystem::path& path, const Labeling& labeling);

}  // namespace polycubify
