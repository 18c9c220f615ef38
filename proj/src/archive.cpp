#include "archive.hpp"

#include "error.hpp"

#include <algorithm>

namespace polycubify {

Archive::Archive(int capacity) : capacity_(capacity) {
  if (capacity < 1) throw InvalidArgumentError("archive capacity must be at least 1");
}

const Individual& Archive::best() const {
  if (entries_.empty()) throw EmptyArchiveError("archive is empty");
  return entries_.front();
}

const Individual& Archive::worst() const {
  if (entries_.empty()) throw EmptyArchiveError("archive is empty");
  return entries_.back();
}

bool Archive::contains(const Labeling& l) const {
  const std::uint64_t d = l.digest();
  for (std::size_t i = 0; i < entries_.size(); ++i)
    if (digests_[i] == d && entries_[i].labeling.same_labels(l)) return true;
  return false;
}

bool Archive::offer(Individual ind) {
  if (contains(ind.labeling)) return false;
  const bool full = size() >= capacity_;
  if (full && !(ind.fitness.total < entries_.back().fitness.total)) return false;
  const auto pos = std::upper_bound(entries_.begin(), entries_.end(), ind.fitness.total,
                                    [](double total, const Individual& e) { return total < e.fitness.total; });
  const auto idx = pos - entries_.begin();
  digests_.insert(digests_.begin() + idx, ind.labeling.digest());
  entries_.insert(pos, std::move(ind));
  if (size() > capacity_) {
    entries_.pop_back();
    digests_.pop_back();
  }
  return true;
}

int select_rank(int n, Rng& rng) {
  if (n <= 0) throw EmptyArchiveError("cannot select from an empty archive");
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n + 1) / 2;
  std::uint64_t u = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
  for (int i = 0; i < n; ++i) {
    const std::uint64_t weight = static_cast<std::uint64_t>(n - i);
    if (u < weight) return i;
    u -= weight;
  }
  return n - 1;
}

const Individual& select_from_archive(const Archive& archive, Rng& rng) {
  return archive[select_rank(archive.size(), rng)];
}

Labeling crossover(const Labeling& first, const Labeling& second) {
  if (first.size() != second.size()) throw InvalidArgumentError("crossover parents differ in size");
  const int n = first.size();
  std::vector<Label> labels(n);
  std::vector<int> stamps(n);
  for (int t = 0; t < n; ++t) {
    const int s1 = first.stamp(t);
    const int s2 = second.stamp(t);
    if (first[t] == second[t]) {
      labels[t] = first[t];
      stamps[t] = std::max(s1, s2);
    } else if (s2 > s1) {
      labels[t] = second[t];
      stamps[t] = s2;
    } else {
      labels[t] = first[t];
      stamps[t] = s1;
    }
  }
  return Labeling(std::move(labels), std::move(stamps));
}

}  // namespace polycubify
