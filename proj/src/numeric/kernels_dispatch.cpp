#include <atomic>
#include <cstdlib>
#include <string>

#include "essmod/numeric/kernels.hpp"

namespace essmod::numeric::kernels {
namespace {

Isa detect() noexcept {
  if (const char* env = std::getenv("ESSMOD_ISA"); env != nullptr && std::string(env) == "scalar") {
    return Isa::Scalar;
  }
  return avx2_available() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() noexcept {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

std::string_view to_string(Isa isa) noexcept { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() noexcept {
#if defined(ESSMOD_HAVE_AVX2_KERNELS)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() noexcept { return current().load(std::memory_order_relaxed); }

Isa set_active_isa(Isa isa) noexcept {
  if (isa == Isa::Avx2 && !avx2_available()) isa = Isa::Scalar;
  current().store(isa, std::memory_order_relaxed);
  return isa;
}

void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
          std::size_t n) noexcept {
#if defined(ESSMOD_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::gemm(a, b, c, m, k, n);
#endif
  scalar::gemm(a, b, c, m, k, n);
}

Complex dotc(const Complex* x, const Complex* y, std::size_t n) noexcept {
#if defined(ESSMOD_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::dotc(x, y, n);
#endif
  return scalar::dotc(x, y, n);
}

void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) noexcept {
#if defined(ESSMOD_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::axpy(alpha, x, y, n);
#endif
  scalar::axpy(alpha, x, y, n);
}

}  // namespace essmod::numeric::kernels
