#pragma once

#include <cstdint>

namespace dcsbm {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform double in [0,1) that depends only on (seed, u, v).
constexpr double pair_uniform(std::uint64_t seed, std::uint64_t u,
                              std::uint64_t v) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ u);
  h = splitmix64(h ^ (v * 0xd1b54a32d192ed03ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Derive an independent stream seed from a base seed and a tag.
constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                    std::uint64_t tag) noexcept {
  return splitmix64(splitmix64(seed) ^ splitmix64(tag + 0x632be59bd9b4e019ULL));
}

}  // namespace dcsbm
