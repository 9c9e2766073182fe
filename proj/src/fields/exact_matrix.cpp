#include "essmod/fields/exact_matrix.hpp"

#include "essmod/error.hpp"

namespace essmod::fields {

GMatrix::GMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

GMatrix GMatrix::identity(std::size_t n) {
  GMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = GaussianRational(1L);
  return m;
}

GMatrix GMatrix::from_columns(std::size_t rows, const std::vector<std::vector<GaussianRational>>& cols) {
  GMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (cols[c].size() != rows) throw Error(ErrorCode::DimensionMismatch, "column length mismatch");
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  }
  return m;
}

GMatrix GMatrix::adjoint() const {
  GMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c).conj();
  }
  return t;
}

std::vector<GaussianRational> GMatrix::column(std::size_t c) const {
  std::vector<GaussianRational> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

std::vector<std::size_t> GMatrix::pivot_columns() const {
  GMatrix m = *this;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols_ && row < rows_; ++c) {
    std::size_t piv = row;
    while (piv < rows_ && m(piv, c).is_zero()) ++piv;
    if (piv == rows_) continue;
    if (piv != row) {
      for (std::size_t k = 0; k < cols_; ++k) std::swap(m(piv, k), m(row, k));
    }
    for (std::size_t r = row + 1; r < rows_; ++r) {
      if (m(r, c).is_zero()) continue;
      const GaussianRational f = m(r, c) / m(row, c);
      for (std::size_t k = c; k < cols_; ++k) m(r, k) -= f * m(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

std::size_t GMatrix::rank() const { return pivot_columns().size(); }

GMatrix GMatrix::select_columns(const std::vector<std::size_t>& idx) const {
  GMatrix m(rows_, idx.size());
  for (std::size_t j = 0; j < idx.size(); ++j) {
    for (std::size_t r = 0; r < rows_; ++r) m(r, j) = (*this)(r, idx[j]);
  }
  return m;
}

GMatrix GMatrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorCode::DimensionMismatch, "inverse of a non-square matrix");
  const std::size_t n = rows_;
  GMatrix a = *this;
  GMatrix inv = identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a(piv, c).is_zero()) ++piv;
    if (piv == n) throw Error(ErrorCode::DomainError, "singular matrix");
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) {
        std::swap(a(piv, k), a(c, k));
        std::swap(inv(piv, k), inv(c, k));
      }
    }
    const GaussianRational scale = GaussianRational(1L) / a(c, c);
    for (std::size_t k = 0; k < n; ++k) {
      a(c, k) *= scale;
      inv(c, k) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c).is_zero()) continue;
      const GaussianRational f = a(r, c);
      for (std::size_t k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        inv(r, k) -= f * inv(c, k);
      }
    }
  }
  return inv;
}

std::vector<GaussianRational> GMatrix::apply(const std::vector<GaussianRational>& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector size mismatch");
  std::vector<GaussianRational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
  }
  return out;
}

GMatrix operator*(const GMatrix& a, const GMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorCode::DimensionMismatch, "matrix product inner dimension");
  GMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

GMatrix operator-(const GMatrix& a, const GMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  GMatrix c = a;
  for (std::size_t i = 0; i < c.e_.size(); ++i) c.e_[i] -= b.e_[i];
  return c;
}

GMatrix orthogonal_projector(const GMatrix& basis, std::size_t rows) {
  if (basis.cols() == 0) return GMatrix(rows, rows);
  if (basis.rows() != rows) throw Error(ErrorCode::DimensionMismatch, "basis rows do not match fiber dimension");
  const GMatrix b = basis.select_columns(basis.pivot_columns());
  if (b.cols() == 0) return GMatrix(rows, rows);
  const GMatrix bstar = b.adjoint();
  return b * (bstar * b).inverse() * bstar;
}

}  // namespace essmod::fields
