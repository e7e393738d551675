#include <cstdlib>
#include <stdexcept>
#include <string>

#include "hamrg/simd/kernels.hpp"

namespace hamrg::simd {

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(HAMRG_HAVE_AVX2_KERNELS)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa select_isa() {
  if (const char* forced = std::getenv("HAMRG_ISA")) {
    const std::string name(forced);
    if (name == "scalar") return Isa::Scalar;
    if (name == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

Isa active_isa() {
  static const Isa isa = select_isa();
  return isa;
}

std::int64_t lookup_draws(Isa isa, std::span<const std::uint32_t> thresholds,
                          std::int32_t ell, std::span<const std::uint32_t> uniforms,
                          std::span<std::int32_t> out) {
  if (out.size() != uniforms.size()) {
    throw std::invalid_argument("lookup_draws: output size mismatch");
  }
  if (!isa_available(isa)) {
    throw std::invalid_argument("lookup_draws: " + std::string(isa_name(isa)) +
                                " not available");
  }
  switch (isa) {
#if defined(HAMRG_HAVE_AVX2_KERNELS)
    case Isa::Avx2:
      return lookup_draws_avx2(thresholds, ell, uniforms, out);
#endif
    default:
      return lookup_draws_scalar(thresholds, ell, uniforms, out);
  }
}

std::int64_t lookup_draws(std::span<const std::uint32_t> thresholds, std::int32_t ell,
                          std::span<const std::uint32_t> uniforms,
                          std::span<std::int32_t> out) {
  return lookup_draws(active_isa(), thresholds, ell, uniforms, out);
}

}  // namespace hamrg::simd
