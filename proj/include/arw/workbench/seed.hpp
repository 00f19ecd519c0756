#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace arw::workbench {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Stream seed for `label` under a global seed. Streams are keyed by name,
/// so adding a task or a stream does not move existing ones.
inline std::uint64_t derive_seed(std::uint64_t global, std::string_view label) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return splitmix64(splitmix64(global) ^ h);
}

inline std::mt19937_64 make_rng(std::uint64_t global, std::string_view label) {
  return std::mt19937_64(derive_seed(global, label));
}

}  // namespace arw::workbench
