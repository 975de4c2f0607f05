#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace vgraph {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// FNV-1a, used to turn a purpose tag into a stream salt.
constexpr std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

using RngStream = std::mt19937_64;

/// Derives an independent generator from (seed, purpose, index).
///
/// Every stochastic step draws from its own stream so results do not depend
/// on evaluation order or thread count.
inline RngStream make_stream(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
  std::uint64_t s = splitmix64(seed);
  s = splitmix64(s ^ tag_hash(tag));
  s = splitmix64(s ^ index);
  return RngStream(s);
}

}  // namespace vgraph
