#pragma once

#include <cstdint>
#include <random>

namespace ddstab {

/// Seeded 64-bit engine. Streams with the same seed but different tags are
/// decorrelated through std::seed_seq.
inline std::mt19937_64 make_engine(std::uint64_t seed, std::uint32_t stream_tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), stream_tag};
  return std::mt19937_64(seq);
}

/// Uniform double in [0, 1). Unlike std::uniform_real_distribution the
/// mapping is fixed, so draws are identical across standard libraries.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& eng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(eng);
}

/// Uniform integer in [0, bound) by rejection; bound > 0.
inline std::uint64_t uniform_index(std::mt19937_64& eng, std::uint64_t bound) {
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t draw = eng();
  while (draw >= limit) draw = eng();
  return draw % bound;
}

// Stream tags, one per consumer.
inline constexpr std::uint32_t kGraphStream = 0x67726170u;
inline constexpr std::uint32_t kPhiStream = 0x70686921u;
inline constexpr std::uint32_t kSampleStream = 0x73616d70u;

}  // namespace ddstab
