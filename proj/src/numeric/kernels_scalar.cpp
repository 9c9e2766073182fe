#include "essmod/numeric/kernels.hpp"

namespace essmod::numeric::kernels::scalar {

void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) noexcept {
  const double ar = alpha.real();
  const double ai = alpha.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real();
    const double xi = x[i].imag();
    y[i] = Complex(y[i].real() + (ar * xr - ai * xi), y[i].imag() + (ar * xi + ai * xr));
  }
}

Complex dotc(const Complex* x, const Complex* y, std::size_t n) noexcept {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void gemm(const Complex* a, const Complex* b, Complex* c, std::size_t m, std::size_t k,
          std::size_t n) noexcept {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = Complex(0.0, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a[i * k + p];
      if (aip == Complex(0.0, 0.0)) continue;
      axpy(aip, b + p * n, c + i * n, n);
    }
  }
}

}  // namespace essmod::numeric::kernels::scalar
