#include "essmod/algebra/cstar.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "essmod/error.hpp"
#include "essmod/numeric/linalg.hpp"

namespace essmod::algebra {

using numeric::herm_eig;
using numeric::scaled_tol;

AlgebraShape::AlgebraShape(std::vector<std::size_t> block_dims) : dims_(std::move(block_dims)) {
  if (dims_.empty()) throw Error(ErrorCode::ShapeMismatch, "algebra shape needs at least one block");
  for (auto n : dims_) {
    if (n == 0) throw Error(ErrorCode::ShapeMismatch, "algebra block dimension must be positive");
  }
}

std::size_t AlgebraShape::dimension() const noexcept {
  std::size_t d = 0;
  for (auto n : dims_) d += n * n;
  return d;
}

AlgebraShape AlgebraShape::amplified(std::size_t k) const {
  std::vector<std::size_t> dims;
  dims.reserve(dims_.size());
  for (auto n : dims_) dims.push_back(k * n);
  return AlgebraShape(std::move(dims));
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<CMatrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.block_count()) {
    throw Error(ErrorCode::ShapeMismatch, "block count does not match algebra shape");
  }
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const auto n = shape_.block_dim(i);
    if (blocks_[i].rows() != n || blocks_[i].cols() != n) {
      throw Error(ErrorCode::ShapeMismatch, "block " + std::to_string(i) + " has the wrong size");
    }
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<CMatrix> blocks;
  for (auto n : shape.block_dims()) blocks.emplace_back(n, n);
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::identity(const AlgebraShape& shape) {
  std::vector<CMatrix> blocks;
  for (auto n : shape.block_dims()) blocks.push_back(CMatrix::identity(n));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::matrix_unit(const AlgebraShape& shape, std::size_t block,
                                           std::size_t row, std::size_t col) {
  auto e = zero(shape);
  e.block(block)(row, col) = 1.0;
  return e;
}

std::vector<AlgebraElement> AlgebraElement::basis(const AlgebraShape& shape) {
  std::vector<AlgebraElement> out;
  out.reserve(shape.dimension());
  for (std::size_t b = 0; b < shape.block_count(); ++b) {
    const auto n = shape.block_dim(b);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) out.push_back(matrix_unit(shape, b, r, c));
    }
  }
  return out;
}

AlgebraElement AlgebraElement::from_vector(const AlgebraShape& shape, std::span<const Complex> v) {
  if (v.size() != shape.dimension()) {
    throw Error(ErrorCode::ShapeMismatch, "vector length does not match algebra dimension");
  }
  std::vector<CMatrix> blocks;
  std::size_t offset = 0;
  for (auto n : shape.block_dims()) {
    blocks.emplace_back(n, n, std::vector<Complex>(v.begin() + static_cast<std::ptrdiff_t>(offset),
                                                   v.begin() + static_cast<std::ptrdiff_t>(offset + n * n)));
    offset += n * n;
  }
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::adjoint() const {
  std::vector<CMatrix> blocks;
  blocks.reserve(blocks_.size());
  for (const auto& b : blocks_) blocks.push_back(b.adjoint());
  return {shape_, std::move(blocks)};
}

double AlgebraElement::norm() const {
  double n = 0.0;
  for (const auto& b : blocks_) n = std::max(n, numeric::op_norm(b));
  return n;
}

bool AlgebraElement::is_hermitian(double tol) const {
  for (const auto& b : blocks_) {
    if (numeric::hermitian_defect(b) > scaled_tol(b.max_abs(), tol)) return false;
  }
  return true;
}

std::vector<Complex> AlgebraElement::to_vector() const {
  std::vector<Complex> v;
  v.reserve(shape_.dimension());
  for (const auto& b : blocks_) v.insert(v.end(), b.entries().begin(), b.entries().end());
  return v;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& other) {
  if (shape_ != other.shape_) throw Error(ErrorCode::ShapeMismatch, "sum of elements of different algebras");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += other.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& other) {
  if (shape_ != other.shape_) throw Error(ErrorCode::ShapeMismatch, "difference of elements of different algebras");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= other.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(Complex s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.shape_ != b.shape_) throw Error(ErrorCode::ShapeMismatch, "product of elements of different algebras");
  std::vector<CMatrix> blocks;
  blocks.reserve(a.blocks_.size());
  for (std::size_t i = 0; i < a.blocks_.size(); ++i) blocks.push_back(a.blocks_[i] * b.blocks_[i]);
  return {a.shape_, std::move(blocks)};
}

double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.shape() != b.shape()) throw Error(ErrorCode::ShapeMismatch, "max_abs_diff of different algebras");
  double m = 0.0;
  for (std::size_t i = 0; i < a.blocks().size(); ++i) {
    m = std::max(m, numeric::max_abs_diff(a.block(i), b.block(i)));
  }
  return m;
}

namespace {

void require_hermitian(const AlgebraElement& a, double tol) {
  if (!a.is_hermitian(tol)) throw Error(ErrorCode::NotHermitian, "element is not self-adjoint");
}

}  // namespace

std::vector<std::vector<double>> spectrum(const AlgebraElement& a, double tol) {
  require_hermitian(a, tol);
  std::vector<std::vector<double>> out;
  for (const auto& b : a.blocks()) {
    out.push_back(herm_eig(b, scaled_tol(b.max_abs(), tol)).eigenvalues);
  }
  return out;
}

AlgebraElement calculus(const AlgebraElement& a, const RealFunction& f, double tol) {
  require_hermitian(a, tol);
  std::vector<CMatrix> blocks;
  blocks.reserve(a.blocks().size());
  for (const auto& b : a.blocks()) {
    const auto eig = herm_eig(b, scaled_tol(b.max_abs(), tol));
    const std::size_t n = b.rows();
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double lambda = eig.eigenvalues[i];
      if (lambda < f.lo || lambda > f.hi) {
        throw Error(ErrorCode::DomainError,
                    "eigenvalue " + std::to_string(lambda) + " outside the function's domain");
      }
      values[i] = f.f(lambda);
    }
    blocks.push_back(eig.vectors * CMatrix::diagonal(values) * eig.vectors.adjoint());
  }
  return {a.shape(), std::move(blocks)};
}

AlgebraElement spectral_projection(const AlgebraElement& a, double eps, double tol) {
  const double guard = scaled_tol(a.norm(), tol);
  for (const auto& block : spectrum(a, tol)) {
    for (double lambda : block) {
      if (std::abs(lambda - eps) <= guard) {
        throw Error(ErrorCode::EigenvalueAtThreshold,
                    "eigenvalue " + std::to_string(lambda) + " sits at the threshold");
      }
    }
  }
  return calculus(a, {[eps](double t) { return t > eps ? 1.0 : 0.0; }}, tol);
}

double ramp(double t, double eps, double n) noexcept {
  if (t <= eps) return 0.0;
  if (t >= eps + 1.0 / n) return 1.0;
  return n * (t - eps);
}

AlgebraElement lower_approximant(const AlgebraElement& a, double eps, double n, double tol) {
  return calculus(a, {[eps, n](double t) { return ramp(t, eps, n); }}, tol);
}

AlgebraElement shifted_positive_part(const AlgebraElement& a, double eps, double tol) {
  return calculus(a, {[eps](double t) { return std::max(t - eps, 0.0); }}, tol);
}

RightIdeal::RightIdeal(AlgebraShape shape, AlgebraElement support)
    : shape_(std::move(shape)), p_(std::move(support)) {
  if (p_.shape() != shape_) throw Error(ErrorCode::ShapeMismatch, "support projection shape");
}

bool RightIdeal::contains(const AlgebraElement& b, double tol) const {
  return max_abs_diff(p_ * b, b) <= scaled_tol(b.norm(), tol);
}

std::vector<std::size_t> RightIdeal::block_ranks() const {
  std::vector<std::size_t> ranks;
  for (const auto& b : p_.blocks()) ranks.push_back(numeric::rank(b, 1e-6));
  return ranks;
}

bool RightIdeal::is_zero(double tol) const { return p_.norm() <= tol; }

std::vector<AlgebraElement> RightIdeal::spanning_set() const {
  std::vector<AlgebraElement> out;
  for (const auto& e : AlgebraElement::basis(shape_)) out.push_back(p_ * e);
  return out;
}

RightIdeal ideal_from_projection(const AlgebraElement& p, double tol) {
  const double guard = scaled_tol(1.0, tol);
  if (max_abs_diff(p, p.adjoint()) > guard || max_abs_diff(p * p, p) > guard) {
    throw Error(ErrorCode::NotProjection, "element is not an orthogonal projection");
  }
  return {p.shape(), p};
}

RightIdeal ideal_support_projection(std::span<const AlgebraElement> generators, double tol) {
  if (generators.empty()) throw Error(ErrorCode::ShapeMismatch, "need at least one generator");
  const auto& shape = generators.front().shape();
  std::vector<CMatrix> blocks;
  for (std::size_t b = 0; b < shape.block_count(); ++b) {
    const auto n = shape.block_dim(b);
    std::vector<std::vector<Complex>> cols;
    for (const auto& g : generators) {
      if (g.shape() != shape) throw Error(ErrorCode::ShapeMismatch, "generators of different algebras");
      for (std::size_t c = 0; c < n; ++c) cols.push_back(g.block(b).column_vector(c));
    }
    blocks.push_back(numeric::projector_onto(numeric::orthonormal_basis(cols, n, std::max(tol, 1e-9))));
  }
  return {shape, AlgebraElement(shape, std::move(blocks))};
}

double subideal_bridge(double t, double eps) noexcept {
  if (t < eps / 2.0) return 0.0;
  if (t >= eps) return 1.0 / t;
  return (t - eps / 2.0) / (eps / 2.0) / eps;
}

SubidealWitness closed_subideal(const AlgebraElement& x, double tol) {
  if (x.norm() <= tol) throw Error(ErrorCode::ZeroInput, "closed_subideal needs a nonzero element");
  const AlgebraElement zero = AlgebraElement::zero(x.shape());
  SubidealWitness w{.a = x * x.adjoint(), .p = zero, .fa = zero, .K = RightIdeal(x.shape(), zero)};
  const double norm_a = w.a.norm();
  const double zero_guard = scaled_tol(norm_a, tol);
  double smallest = norm_a;
  for (const auto& block : spectrum(w.a, tol)) {
    for (double lambda : block) {
      if (lambda > zero_guard) smallest = std::min(smallest, lambda);
    }
  }
  // Half the smallest nonzero eigenvalue: (a - eps)_+ != 0 and p is the range
  // projection of a, hence of x.
  w.eps = smallest / 2.0;
  w.p = spectral_projection(w.a, w.eps, tol);
  const double eps = w.eps;
  w.fa = calculus(w.a, {[eps](double t) { return t * subideal_bridge(t, eps); }}, tol);
  w.K = ideal_from_projection(w.p, 1e-8);

  w.fa_p_residual = max_abs_diff(w.fa * w.p, w.p);
  w.fa_p_ok = w.fa_p_residual <= 1e-9;
  const AlgebraElement fap = w.fa * w.p;
  for (const auto& b : w.K.spanning_set()) {
    if (b.norm() <= tol) continue;
    ++w.probe_count;
    w.max_probe_residual = std::max(w.max_probe_residual, max_abs_diff(fap * b, b));
  }
  w.probes_ok = w.probe_count > 0 && w.max_probe_residual <= 1e-8;
  return w;
}

std::size_t intersection_dimension(const RightIdeal& a, const RightIdeal& b) {
  if (a.shape() != b.shape()) throw Error(ErrorCode::ShapeMismatch, "ideals of different algebras");
  std::size_t total = 0;
  for (std::size_t i = 0; i < a.shape().block_count(); ++i) {
    const auto n = a.shape().block_dim(i);
    const CMatrix u = numeric::column_space(a.support_projection().block(i), 1e-6);
    const CMatrix w = numeric::column_space(b.support_projection().block(i), 1e-6);
    std::vector<std::vector<Complex>> cols;
    for (std::size_t c = 0; c < u.cols(); ++c) cols.push_back(u.column_vector(c));
    for (std::size_t c = 0; c < w.cols(); ++c) cols.push_back(w.column_vector(c));
    const std::size_t sum_dim = numeric::orthonormal_basis(cols, n, 1e-6).cols();
    total += n * (u.cols() + w.cols() - sum_dim);
  }
  return total;
}

IdealEssentiality is_essential_right_ideal(const RightIdeal& ideal, double tol) {
  (void)tol;
  const auto& shape = ideal.shape();
  for (std::size_t b = 0; b < shape.block_count(); ++b) {
    const auto n = shape.block_dim(b);
    const CMatrix range = numeric::column_space(ideal.support_projection().block(b), 1e-6);
    if (range.cols() == n) continue;
    IdealNonEssentialCertificate cert;
    cert.block = b;
    cert.v = numeric::orthogonal_complement(range).column_vector(0);
    cert.q = AlgebraElement::zero(shape);
    cert.q.block(b) = CMatrix::column(cert.v) * CMatrix::column(cert.v).adjoint();
    cert.intersection_dim = intersection_dimension(ideal, RightIdeal(shape, cert.q));
    return {false, std::move(cert)};
  }
  return {true, std::nullopt};
}

}  // namespace essmod::algebra
