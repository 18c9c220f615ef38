#pragma once

#include <cstdint>
#include <random>

namespace polycubify {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream for one (generation, slot) pair, so results do not
/// depend on which worker runs the slot.
inline Rng make_stream(std::uint64_t master_seed, std::uint64_t generation, std::uint64_t slot) {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ generation);
  h = splitmix64(h ^ (slot * 0xd1b54a32d192ed03ULL));
  return Rng(h);
}

}  // namespace polycubify
