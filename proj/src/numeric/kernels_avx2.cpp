#include "essmod/numeric/kernels.hpp"

#if defined(ESSMOD_HAVE_AVX2_KERNELS)
#include <immintrin.h>

#define ESSMOD_AVX2_TARGET __attribute__((target("avx2,fma")))

namespace essmod::numeric::kernels::avx2 {

// One __m256d holds two interleaved complex numbers: (r0, i0, r1, i1).

ESSMOD_AVX2_TARGET void axpy(Complex alpha, const Complex* x, Complex* y,
                             std::size_t n) noexcept {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    const __m256d swapped = _mm256_permute_pd(xv, 0b0101);  // (i0, r0, i1, r1)
    const __m256d cross = _mm256_mul_pd(ai, swapped);
    // even lanes: ar*xr - ai*xi, odd lanes: ar*xi + ai*xr
    const __m256d prod = _mm256_fmaddsub_pd(ar, xv, cross);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
  }
  if (i < n) scalar::axpy(alpha, x + i, y + i, n - i);
}

ESSMOD_AVX2_TARGET Complex dotc(const Complex* x, const Complex* y, std::size_t n) noexcept {
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  __m256d acc_re = _mm256_setzero_pd();  // (xr*yr, xi*yi, ...)
  __m256d acc_im = _mm256_setzero_pd();  // (xr*yi, xi*yr, ...)
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  alignas(32) double re[4];
  alignas(32) double im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  Complex sum(re[0] + re[1] + re[2] + re[3], (im[0] - im[1]) + (im[2] - im[3]));
  if (i < n) sum += scalar::dotc(x + i, y + i, n - i);
  return sum;
}

ESSMOD_AVX2_TARGET void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t m,
                             std::size_t k, std::size_t n) noexcept {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = Complex(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a[i * k + p];
      if (aip == Complex(0.0, 0.0)) continue;
      axpy(aip, b + p * n, c + i * n, n);
    }
  }
}

}  // namespace essmod::numeric::kernels::avx2

#endif
