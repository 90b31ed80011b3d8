#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace bppm {

using Rng = std::mt19937_64;

// Deterministic child seed from a master seed and a task path (e.g. {point, sim}).
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  // splitmix64 finalizer over the path
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  std::uint64_t h = mix(master);
  for (std::uint64_t p : path) h = mix(h ^ mix(p));
  return h;
}

inline Rng make_rng(std::uint64_t master, std::initializer_list<std::uint64_t> path = {}) {
  return Rng(derive_seed(master, path));
}

}  // namespace bppm
