#pragma once

#include <cstdint>
#include <string_view>

namespace qehc {

// splitmix64; used to derive independent per-instance seeds so sweeps can
// fan out without sharing generator state.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (0x9e3779b97f4a7c15ULL + b));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::string_view tag, std::uint64_t b) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char ch : tag) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ULL;
  }
  return mix_seed(mix_seed(a, h), b);
}

}  // namespace qehc
