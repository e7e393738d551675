#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace hamrg {

using Rng = std::mt19937_64;

// Independent stream for (seed, index). Every parallel trial or Monte Carlo
// chunk owns one of these, so results never depend on scheduling.
inline Rng derive_stream(std::uint64_t seed, std::uint64_t index,
                         std::uint64_t tag = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(tag),
                    static_cast<std::uint32_t>(tag >> 32)};
  return Rng(seq);
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound). bound must be positive.
template <typename Int>
inline Int uniform_below(Rng& rng, Int bound) {
  return std::uniform_int_distribution<Int>(0, bound - 1)(rng);
}

// Two 32-bit uniforms per engine call.
inline void fill_uniform_u32(Rng& rng, std::span<std::uint32_t> out) {
  std::size_t i = 0;
  for (; i + 1 < out.size(); i += 2) {
    const std::uint64_t x = rng();
    out[i] = static_cast<std::uint32_t>(x);
    out[i + 1] = static_cast<std::uint32_t>(x >> 32);
  }
  if (i < out.size()) out[i] = static_cast<std::uint32_t>(rng());
}

}  // namespace hamrg
