#include <immintrin.h>

#include <vector>

#include "hamrg/simd/kernels.hpp"

namespace hamrg::simd {

// Eight lanes per iteration. AVX2 has no unsigned 32-bit compare, so both
// sides are biased by 2^31 and compared signed. Thresholds are nondecreasing,
// so once no lane passes threshold k none passes any later one.
std::int64_t lookup_draws_avx2(std::span<const std::uint32_t> thresholds,
                               std::int32_t ell,
                               std::span<const std::uint32_t> uniforms,
                               std::span<std::int32_t> out) {
  const std::size_t size = thresholds.size();
  std::vector<std::int32_t> biased(size);
  for (std::size_t k = 0; k < size; ++k) {
    biased[k] = static_cast<std::int32_t>(thresholds[k] ^ 0x80000000u);
  }

  const __m256i bias = _mm256_set1_epi32(static_cast<int>(0x80000000u));
  const __m256i ell_v = _mm256_set1_epi32(ell);
  __m256i acc_lo = _mm256_setzero_si256();
  __m256i acc_hi = _mm256_setzero_si256();

  const std::size_t count = uniforms.size();
  std::size_t i = 0;
  for (; i + 8 <= count; i += 8) {
    const __m256i v = _mm256_xor_si256(
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(uniforms.data() + i)), bias);
    __m256i cnt = _mm256_setzero_si256();
    for (std::size_t k = 0; k < size; ++k) {
      // lane passes iff v >= t, i.e. not (t > v)
      const __m256i t = _mm256_set1_epi32(biased[k]);
      const __m256i below = _mm256_cmpgt_epi32(t, v);
      if (_mm256_movemask_epi8(below) == -1) break;
      cnt = _mm256_sub_epi32(cnt, _mm256_andnot_si256(below, _mm256_set1_epi32(-1)));
    }
    const __m256i draws = _mm256_add_epi32(cnt, ell_v);
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + i), draws);
    acc_lo = _mm256_add_epi64(acc_lo, _mm256_cvtepi32_epi64(_mm256_castsi256_si128(draws)));
    acc_hi = _mm256_add_epi64(acc_hi, _mm256_cvtepi32_epi64(_mm256_extracti128_si256(draws, 1)));
  }

  alignas(32) std::int64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), _mm256_add_epi64(acc_lo, acc_hi));
  std::int64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];

  if (i < count) {
    total += lookup_draws_scalar(thresholds, ell, uniforms.subspan(i), out.subspan(i));
  }
  return total;
}

}  // namespace hamrg::simd
