#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ccf {

using Rng = std::mt19937_64;

// Stream purposes. Keeping them distinct means e.g. the bootstrap never
// shares draws with the replications it summarizes.
enum class StreamKind : std::uint32_t {
  replication = 1,
  bootstrap = 2,
  climate_path = 3,
  climate_year = 4,
  pooled = 5,
  jitter = 6,
};

// Independent generator for (seed, kind, index). Same key, same sequence.
inline Rng make_stream(std::uint64_t seed, StreamKind kind, std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

// Uniform in [0, 1) from the top 53 bits. Bit-exact across standard libraries,
// unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Standard normal by Box-Muller; one variate per call so the stream position
// depends only on the number of calls.
inline double standard_normal(Rng& rng) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  double u1 = uniform01(rng);
  while (u1 <= 0.0) u1 = uniform01(rng);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
}

}  // namespace ccf
