#pragma once

#include <cstddef>
#include <vector>

#include "essmod/fields/rational.hpp"

namespace essmod::fields {

/// Dense row-major matrix over the Gaussian rationals.
class GMatrix {
 public:
  GMatrix() = default;
  GMatrix(std::size_t rows, std::size_t cols);

  static GMatrix identity(std::size_t n);
  /// Matrix whose columns are the given vectors (all of length `rows`).
  static GMatrix from_columns(std::size_t rows, const std::vector<std::vector<GaussianRational>>& cols);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  GaussianRational& operator()(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
  const GaussianRational& operator()(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

  [[nodiscard]] GMatrix adjoint() const;
  [[nodiscard]] std::vector<GaussianRational> column(std::size_t c) const;
  [[nodiscard]] std::size_t rank() const;
  /// Indices of a maximal independent set of columns (first pivots, left to right).
  [[nodiscard]] std::vector<std::size_t> pivot_columns() const;
  [[nodiscard]] GMatrix select_columns(const std::vector<std::size_t>& idx) const;
  /// Gauss-Jordan inverse; throws DomainError if singular.
  [[nodiscard]] GMatrix inverse() const;
  [[nodiscard]] std::vector<GaussianRational> apply(const std::vector<GaussianRational>& v) const;

  friend GMatrix operator*(const GMatrix& a, const GMatrix& b);
  friend GMatrix operator-(const GMatrix& a, const GMatrix& b);
  friend bool operator==(const GMatrix&, const GMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<GaussianRational> e_;
};

/// Exact orthogonal projector B (B*B)^-1 B* onto the column span of B
/// (dependent columns are dropped first). `rows` fixes the size when B has
/// no columns, in which case the zero projector is returned.
GMatrix orthogonal_projector(const GMatrix& basis, std::size_t rows);

}  // namespace essmod::fields
