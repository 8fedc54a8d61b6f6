#pragma once

#include <cstdint>
#include <string_view>

namespace lexidot {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xCBF29CE484222325ULL) noexcept {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

/// Stable 64-bit key for (seed, text); platform independent.
inline constexpr std::uint64_t seeded_hash(std::uint64_t seed, std::string_view text) noexcept {
  return splitmix64(fnv1a(text) ^ splitmix64(seed));
}

}  // namespace lexidot
