#pragma once
// Complex inner-loop kernels with a scalar reference and an AVX2/FMA variant.
// The variant is picked once at startup from CPUID; ESSMOD_ISA=scalar forces
// the reference path. Buffers are interleaved (re, im) std::complex<double>.

#include <complex>
#include <cstddef>
#include <string_view>

namespace essmod::numeric::kernels {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa) noexcept;

/// True when the running CPU can execute the AVX2 variant.
bool avx2_available() noexcept;

/// The variant currently used by the dispatching entry points.
Isa active_isa() noexcept;

/// Override the dispatch choice (tests, benchmarks). Requesting Avx2 on a CPU
/// without it falls back to Scalar; the effective choice is returned.
Isa set_active_isa(Isa isa) noexcept;

// c[m x n] = a[m x k] * b[k x n], all row-major, c must not alias a or b.
void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
          std::size_t n) noexcept;
// sum_i conj(x_i) * y_i
Complex dotc(const Complex* x, const Complex* y, std::size_t n) noexcept;
// y += alpha * x
void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) noexcept;

namespace scalar {
void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
          std::size_t n) noexcept;
Complex dotc(const Complex* x, const Complex* y, std::size_t n) noexcept;
void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) noexcept;
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define ESSMOD_HAVE_AVX2_KERNELS 1
namespace avx2 {
void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
          std::size_t n) noexcept;
Complex dotc(const Complex* x, const Complex* y, std::size_t n) noexcept;
void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) noexcept;
}  // namespace avx2
#endif

}  // namespace essmod::numeric::kernels
