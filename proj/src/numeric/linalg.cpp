#include "essmod/numeric/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "essmod/error.hpp"
#include "essmod/numeric/kernels.hpp"

namespace essmod::numeric {
namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      if (r != c) s += std::norm(a(r, c));
    }
  }
  return std::sqrt(s);
}

void normalize_phase(CMatrix& v, std::size_t col) {
  const std::size_t n = v.rows();
  double biggest = 0.0;
  for (std::size_t r = 0; r < n; ++r) biggest = std::max(biggest, std::abs(v(r, col)));
  for (std::size_t r = 0; r < n; ++r) {
    const double mag = std::abs(v(r, col));
    if (mag > 1e-8 * biggest) {
      const Complex phase = std::conj(v(r, col)) / mag;
      for (std::size_t i = 0; i < n; ++i) v(i, col) *= phase;
      v(r, col) = Complex(std::abs(v(r, col)), 0.0);
      return;
    }
  }
}

bool lex_less(const CMatrix& v, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < v.rows(); ++r) {
    const Complex x = v(r, a);
    const Complex y = v(r, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

}  // namespace

double hermitian_defect(const CMatrix& a) {
  if (!a.is_square()) throw Error(ErrorCode::ShapeMismatch, "hermitian check on non-square matrix");
  double d = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = r; c < a.cols(); ++c) d = std::max(d, std::abs(a(r, c) - std::conj(a(c, r))));
  }
  return d;
}

HermitianEigen herm_eig(const CMatrix& input, double tol) {
  if (!input.is_square()) throw Error(ErrorCode::ShapeMismatch, "herm_eig needs a square matrix");
  if (hermitian_defect(input) > tol) {
    throw Error(ErrorCode::NotHermitian, "matrix is not hermitian within tolerance");
  }
  const std::size_t n = input.rows();
  // Work on the exact hermitian part.
  CMatrix a = input;
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = Complex(a(r, r).real(), 0.0);
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = avg;
      a(c, r) = std::conj(avg);
    }
  }
  CMatrix v = CMatrix::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-15 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-300) continue;
        const Complex e = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = [[c, s e], [-s conj(e), c]] on coordinates (p, q); A <- G* A G.
        const Complex gpq = s * e;
        const Complex gqp = -s * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = akp * c + akq * gqp;
          a(k, q) = akp * gpq + akq * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk + std::conj(gqp) * aqk;
          a(q, k) = std::conj(gpq) * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = Complex(a(p, p).real(), 0.0);
        a(q, q) = Complex(a(q, q).real(), 0.0);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = vkp * c + vkq * gqp;
          v(k, q) = vkp * gpq + vkq * c;
        }
      }
    }
  }
  if (sweep == kMaxSweeps && off_diagonal_norm(a) > 1e-15 * scale) {
    throw Error(ErrorCode::NoConvergence, "Jacobi iteration did not converge");
  }

  for (std::size_t j = 0; j < n; ++j) normalize_phase(v, j);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  // Ties (within tol) ordered by eigenvector.
  // The hermiticity tolerance may be loose; never let it merge distinct eigenvalues.
  const double tie = scaled_tol(scale, std::min(tol, kDefaultTol));
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i + 1;
    while (j < n && a(order[j], order[j]).real() - a(order[i], order[i]).real() <= tie) ++j;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(i), order.begin() + static_cast<std::ptrdiff_t>(j),
              [&](std::size_t x, std::size_t y) { return lex_less(v, x, y); });
    i = j;
  }

  HermitianEigen out;
  out.eigenvalues.resize(n);
  out.vectors = CMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, j) = v(r, order[j]);
  }
  return out;
}

double op_norm(const CMatrix& a) {
  if (a.empty()) return 0.0;
  // Use the smaller Gram matrix.
  const CMatrix gram = a.rows() >= a.cols() ? a.adjoint() * a : a * a.adjoint();
  const auto eig = herm_eig(gram, std::numeric_limits<double>::infinity());
  const double top = *std::max_element(eig.eigenvalues.begin(), eig.eigenvalues.end());
  return std::sqrt(std::max(0.0, top));
}

bool is_psd(const CMatrix& a, double tol) {
  if (a.empty()) return true;
  const auto eig = herm_eig(a, scaled_tol(a.max_abs(), tol));
  return eig.eigenvalues.front() >= -tol;
}

double vector_norm(std::span<const Complex> v) {
  return std::sqrt(kernels::dotc(v.data(), v.data(), v.size()).real());
}

CMatrix orthonormal_basis(std::span<const std::vector<Complex>> vectors, std::size_t n,
                          double tol) {
  double largest = 0.0;
  for (const auto& v : vectors) {
    if (v.size() != n) throw Error(ErrorCode::ShapeMismatch, "vector length mismatch in span");
    largest = std::max(largest, vector_norm(v));
  }
  const double threshold = tol * std::max(1.0, largest);
  std::vector<std::vector<Complex>> basis;
  for (const auto& v : vectors) {
    if (basis.size() == n) break;
    std::vector<Complex> w = v;
    // Two Gram-Schmidt passes keep the basis orthonormal to working precision.
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) {
        const Complex proj = kernels::dotc(b.data(), w.data(), n);
        kernels::axpy(-proj, b.data(), w.data(), n);
      }
    }
    const double norm = vector_norm(w);
    if (norm > threshold) {
      for (auto& z : w) z /= norm;
      basis.push_back(std::move(w));
    }
  }
  CMatrix q(n, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (std::size_t r = 0; r < n; ++r) q(r, j) = basis[j][r];
  }
  return q;
}

CMatrix column_space(const CMatrix& m, double tol) {
  std::vector<std::vector<Complex>> cols;
  cols.reserve(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) cols.push_back(m.column_vector(c));
  return orthonormal_basis(cols, m.rows(), tol);
}

CMatrix orthogonal_complement(const CMatrix& q) {
  const std::size_t n = q.rows();
  std::vector<std::vector<Complex>> vecs;
  for (std::size_t c = 0; c < q.cols(); ++c) vecs.push_back(q.column_vector(c));
  const std::size_t r = vecs.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Complex> e(n, Complex(0.0, 0.0));
    e[i] = 1.0;
    vecs.push_back(std::move(e));
  }
  // Standard basis vectors are unit length; a residual below 1e-6 means the
  // vector is (numerically) inside the span already.
  CMatrix full = orthonormal_basis(vecs, n, 1e-6);
  CMatrix out(n, full.cols() - std::min(full.cols(), r));
  for (std::size_t j = r; j < full.cols(); ++j) {
    for (std::size_t row = 0; row < n; ++row) out(row, j - r) = full(row, j);
  }
  return out;
}

CMatrix null_space(const CMatrix& m, double tol) {
  std::vector<std::vector<Complex>> rows;
  rows.reserve(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::vector<Complex> row(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) row[c] = std::conj(m(r, c));
    rows.push_back(std::move(row));
  }
  return orthogonal_complement(orthonormal_basis(rows, m.cols(), tol));
}

CMatrix projector_onto(const CMatrix& q) {
  if (q.cols() == 0) return CMatrix(q.rows(), q.rows());
  return q * q.adjoint();
}

double residual_norm(const CMatrix& q, std::span<const Complex> v) {
  const std::size_t n = q.rows();
  if (v.size() != n) throw Error(ErrorCode::ShapeMismatch, "residual_norm length mismatch");
  std::vector<Complex> w(v.begin(), v.end());
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < q.cols(); ++j) {
      const auto col = q.column_vector(j);
      const Complex proj = kernels::dotc(col.data(), w.data(), n);
      kernels::axpy(-proj, col.data(), w.data(), n);
    }
  }
  return vector_norm(w);
}

std::size_t rank(const CMatrix& m, double tol) { return column_space(m, tol).cols(); }

}  // namespace essmod::numeric
