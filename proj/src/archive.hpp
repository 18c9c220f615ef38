#pragma once

#include "fitness.hpp"
#include "labeling.hpp"
#include "rng.hpp"

#include <cstdint>
#include <vector>

namespace polycubify {

struct Individual {
  Labeling labeling;
  FitnessValue fitness;
  int birth_generation = 0;
  std::int64_t lineage = 0;
};

inline constexpr int kDefaultArchiveCapacity = 100;

/// Bounded elite set kept sorted by fitness total, best first. Equal totals
/// keep insertion order. Label vectors are unique.
class Archive {
 public:
  explicit Archive(int capacity = kDefaultArchiveCapacity);

  int capacity() const { return capacity_; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }
  const Individual& operator[](int rank) const { return entries_[rank]; }
  const std::vector<Individual>& entries() const { return entries_; }
  /// Throws EmptyArchiveError.
  const Individual& best() const;
  const Individual& worst() const;

  bool contains(const Labeling& l) const;

  /// Accepted when new and either there is room or it beats the worst entry,
  /// which is then dropped.
  bool offer(Individual ind);

 private:
  int capacity_;
  std::vector<Individual> entries_;
  std::vector<std::uint64_t> digests_;
};

/// Rank selection: 0-based rank i of n is drawn with probability
/// (n - i) / (n (n + 1) / 2).
int select_rank(int n, Rng& rng);

/// Throws EmptyArchiveError when the archive is empty.
const Individual& select_from_archive(const Archive& archive, Rng& rng);

/// Per-triangle merge: agreeing labels are kept with the newer stamp, and
/// conflicts go to the more recently changed parent, `first` on ties.
Labeling crossover(const Labeling& first, const Labeling& second);

}  // namespace polycubify
