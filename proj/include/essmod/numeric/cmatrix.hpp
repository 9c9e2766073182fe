#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace essmod::numeric {

using Complex = std::complex<double>;

/// Absolute tolerance used across the floating-point layers; scale with
/// scaled_tol() by the magnitude of the input being judged.
inline constexpr double kDefaultTol = 1e-10;

inline double scaled_tol(double norm, double tol = kDefaultTol) noexcept {
  return tol * (1.0 + norm);
}

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> values);
  /// Column matrix from a vector.
  static CMatrix column(std::span<const Complex> v);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }

  Complex& operator()(std::size_t r, std::size_t c) noexcept { return entries_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }

  [[nodiscard]] std::span<const Complex> entries() const noexcept { return entries_; }
  [[nodiscard]] std::span<Complex> entries() noexcept { return entries_; }
  [[nodiscard]] std::vector<Complex> column_vector(std::size_t c) const;

  [[nodiscard]] CMatrix adjoint() const;
  /// Largest entry modulus.
  [[nodiscard]] double max_abs() const noexcept;
  [[nodiscard]] double frobenius_norm() const noexcept;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(Complex s) noexcept;

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
  friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

/// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

}  // namespace essmod::numeric
