#pragma once

#include <cstddef>
#include <cstdint>

namespace vchild {

// SplitMix64 finaliser. Used for every seeded choice so that draws are
// identical across standard libraries (std::uniform_int_distribution is not).
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t mix64(std::uint64_t a, std::uint64_t b) noexcept {
  return mix64(a ^ mix64(b));
}

/// Index in [0, n) derived from `seed`. n must be positive.
constexpr std::size_t pick_index(std::uint64_t seed, std::size_t n) noexcept {
  // 128-bit multiply-shift keeps the draw unbiased enough for n << 2^64.
  const unsigned __int128 wide = static_cast<unsigned __int128>(mix64(seed)) * n;
  return static_cast<std::size_t>(wide >> 64);
}

/// Uniform double in [0, 1) derived from `seed`.
constexpr double unit_double(std::uint64_t seed) noexcept {
  return static_cast<double>(mix64(seed) >> 11) * 0x1.0p-53;
}

// Purpose tags keep independent draws from sharing a stream.
enum class SeedPurpose : std::uint64_t {
  kVariant = 0x5641524e,
  kDefault = 0x44454641,
  kScenario = 0x5343454e,
  kName = 0x4e414d45,
  kPacing = 0x50414345,
};

constexpr std::uint64_t derive_seed(std::uint64_t base, SeedPurpose purpose,
                                    std::uint64_t counter = 0) noexcept {
  return mix64(mix64(base, static_cast<std::uint64_t>(purpose)), counter);
}

}  // namespace vchild
