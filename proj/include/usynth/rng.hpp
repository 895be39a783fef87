#pragma once

#include <cstddef>
#include <cstdint>

namespace usynth {

// Counter-based pseudo random values. Every draw is a pure function of
// (seed, stream, counter), so placement code stays deterministic no matter
// in which order or on how many threads entities are processed.
//
// The mixer is splitmix64's finalizer applied to the combined key.

constexpr std::uint64_t HashCombine(std::uint64_t a, std::uint64_t b)
{
  std::uint64_t x = a + 0x9e3779b97f4a7c15ull + (b << 6) + (b >> 2);
  x ^= b * 0xff51afd7ed558ccdull;
  return x;
}

constexpr std::uint64_t Mix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Compile-time FNV-1a for readable stream tags: Rand(seed, "trees"_tag, i).
constexpr std::uint64_t fnv1a64(const char* data, std::size_t len)
{
  std::uint64_t h = 14695981039346656037ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= static_cast<std::uint8_t>(data[i]);
    h *= 1099511628211ull;
  }
  return h;
}

constexpr std::uint64_t operator""_tag(const char* str, std::size_t len)
{
  return fnv1a64(str, len);
}

inline std::uint64_t RandU64(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
  return Mix64(HashCombine(HashCombine(seed, stream), counter));
}

// Uniform in [0, 1).
inline double RandUnit(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
{
  return static_cast<double>(RandU64(seed, stream, counter) >> 11) * 0x1.0p-53;
}

inline double RandRange(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                        double lo, double hi)
{
  return lo + (hi - lo) * RandUnit(seed, stream, counter);
}

inline std::uint32_t RandIndex(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter,
                               std::uint32_t n)
{
  return n == 0 ? 0 : static_cast<std::uint32_t>(RandU64(seed, stream, counter) % n);
}

}  // namespace usynth
