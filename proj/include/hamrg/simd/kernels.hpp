#pragma once

// Batch inverse-CDF lookup used by the sum-conditioned degree sampler. The
// scalar version is the reference; vector variants must produce identical
// output for identical input.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace hamrg::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

// out[i] = ell + #{k : uniforms[i] >= thresholds[k]}; thresholds must be
// nondecreasing. Returns the sum of out. out.size() must equal uniforms.size().
std::int64_t lookup_draws_scalar(std::span<const std::uint32_t> thresholds,
                                 std::int32_t ell,
                                 std::span<const std::uint32_t> uniforms,
                                 std::span<std::int32_t> out);

#if defined(HAMRG_HAVE_AVX2_KERNELS)
std::int64_t lookup_draws_avx2(std::span<const std::uint32_t> thresholds,
                               std::int32_t ell,
                               std::span<const std::uint32_t> uniforms,
                               std::span<std::int32_t> out);
#endif

// True when the variant was compiled in and the CPU supports it.
bool isa_available(Isa isa);

// Best available variant, unless HAMRG_ISA=scalar|avx2 selects one.
Isa active_isa();

// Dispatches to the active variant.
std::int64_t lookup_draws(std::span<const std::uint32_t> thresholds, std::int32_t ell,
                          std::span<const std::uint32_t> uniforms,
                          std::span<std::int32_t> out);

// Same, with an explicit variant. Throws std::invalid_argument if unavailable.
std::int64_t lookup_draws(Isa isa, std::span<const std::uint32_t> thresholds,
                          std::int32_t ell, std::span<const std::uint32_t> uniforms,
                          std::span<std::int32_t> out);

}  // namespace hamrg::simd
