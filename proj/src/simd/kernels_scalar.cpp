#include "hamrg/simd/kernels.hpp"

namespace hamrg::simd {

std::int64_t lookup_draws_scalar(std::span<const std::uint32_t> thresholds,
                                 std::int32_t ell,
                                 std::span<const std::uint32_t> uniforms,
                                 std::span<std::int32_t> out) {
  const std::size_t size = thresholds.size();
  std::int64_t total = 0;
  for (std::size_t i = 0; i < uniforms.size(); ++i) {
    const std::uint32_t v = uniforms[i];
    std::size_t k = 0;
    while (k < size && v >= thresholds[k]) ++k;
    out[i] = ell + static_cast<std::int32_t>(k);
    total += out[i];
  }
  return total;
}

}  // namespace hamrg::simd
