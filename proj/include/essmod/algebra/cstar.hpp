#pragma once
// Finite-dimensional C*-algebras A = M_{n1} (+) ... (+) M_{nr} in their
// defining representation on C^{n1} (+) ... (+) C^{nr}. In this setting the
// bicommutant of A is A itself, every projection of A is open, and the closed
// right ideals are exactly the sets pA for projections p.

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "essmod/numeric/cmatrix.hpp"

namespace essmod::algebra {

using numeric::CMatrix;
using numeric::Complex;
using numeric::kDefaultTol;

class AlgebraShape {
 public:
  AlgebraShape() = default;
  /// Throws ShapeMismatch on an empty list or a zero block.
  explicit AlgebraShape(std::vector<std::size_t> block_dims);

  [[nodiscard]] const std::vector<std::size_t>& block_dims() const noexcept { return dims_; }
  [[nodiscard]] std::size_t block_count() const noexcept { return dims_.size(); }
  [[nodiscard]] std::size_t block_dim(std::size_t i) const { return dims_.at(i); }
  /// Complex dimension sum n_i^2.
  [[nodiscard]] std::size_t dimension() const noexcept;
  /// Shape of M_k(A), i.e. blocks k*n_i.
  [[nodiscard]] AlgebraShape amplified(std::size_t k) const;

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  std::vector<std::size_t> dims_;
};

class AlgebraElement {
 public:
  AlgebraElement() = default;
  AlgebraElement(AlgebraShape shape, std::vector<CMatrix> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement identity(const AlgebraShape& shape);
  /// e_{row,col} in block `block`.
  static AlgebraElement matrix_unit(const AlgebraShape& shape, std::size_t block, std::size_t row,
                                    std::size_t col);
  /// All matrix units, in block-major row-major order (a complex basis of A).
  static std::vector<AlgebraElement> basis(const AlgebraShape& shape);
  static AlgebraElement from_vector(const AlgebraShape& shape, std::span<const Complex> v);

  [[nodiscard]] const AlgebraShape& shape() const noexcept { return shape_; }
  [[nodiscard]] const std::vector<CMatrix>& blocks() const noexcept { return blocks_; }
  [[nodiscard]] const CMatrix& block(std::size_t i) const { return blocks_.at(i); }
  CMatrix& block(std::size_t i) { return blocks_.at(i); }

  [[nodiscard]] AlgebraElement adjoint() const;
  /// C*-norm: the largest block operator norm.
  [[nodiscard]] double norm() const;
  [[nodiscard]] bool is_hermitian(double tol = kDefaultTol) const;
  [[nodiscard]] std::vector<Complex> to_vector() const;

  AlgebraElement& operator+=(const AlgebraElement& other);
  AlgebraElement& operator-=(const AlgebraElement& other);
  AlgebraElement& operator*=(Complex s);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(AlgebraElement a, Complex s) { return a *= s; }
  friend AlgebraElement operator*(Complex s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

 private:
  AlgebraShape shape_;
  std::vector<CMatrix> blocks_;
};

/// Largest entrywise difference over all blocks.
double max_abs_diff(const AlgebraElement& a, const AlgebraElement& b);

/// A real function with the closed interval on which it is defined.
struct RealFunction {
  std::function<double(double)> f;
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
};

/// Spectral eigenvalues of a hermitian element, per block.
std::vector<std::vector<double>> spectrum(const AlgebraElement& a, double tol = kDefaultTol);

/// f(a) = per block u diag(f(lambda)) u*. Throws NotHermitian, DomainError.
AlgebraElement calculus(const AlgebraElement& a, const RealFunction& f, double tol = kDefaultTol);

/// chi_(eps, inf)(a). Throws EigenvalueAtThreshold if an eigenvalue lies
/// within tol*(1+||a||) of eps.
AlgebraElement spectral_projection(const AlgebraElement& a, double eps, double tol = kDefaultTol);

/// The continuous ramp g_n: 0 for t <= eps, n(t-eps) on (eps, eps+1/n),
/// 1 from eps+1/n on.
double ramp(double t, double eps, double n) noexcept;

/// g_n(a); increases with n to spectral_projection(a, eps).
AlgebraElement lower_approximant(const AlgebraElement& a, double eps, double n,
                                 double tol = kDefaultTol);

/// (a - eps)_+ = max(a - eps, 0).
AlgebraElement shifted_positive_part(const AlgebraElement& a, double eps, double tol = kDefaultTol);

/// Closed right ideal pA, stored by its support projection.
class RightIdeal {
 public:
  RightIdeal(AlgebraShape shape, AlgebraElement support);

  [[nodiscard]] const AlgebraShape& shape() const noexcept { return shape_; }
  [[nodiscard]] const AlgebraElement& support_projection() const noexcept { return p_; }
  /// b in pA iff pb = b.
  [[nodiscard]] bool contains(const AlgebraElement& b, double tol = kDefaultTol) const;
  /// rank of p per block.
  [[nodiscard]] std::vector<std::size_t> block_ranks() const;
  [[nodiscard]] bool is_zero(double tol = kDefaultTol) const;
  /// {p e : e matrix unit}, a complex spanning set of pA.
  [[nodiscard]] std::vector<AlgebraElement> spanning_set() const;

 private:
  AlgebraShape shape_;
  AlgebraElement p_;
};

/// Throws NotProjection unless p^2 = p = p* within tol.
RightIdeal ideal_from_projection(const AlgebraElement& p, double tol = kDefaultTol);

/// Support projection of the right ideal generated by the elements: per block,
/// the orthogonal projection onto the sum of the generators' column spaces.
RightIdeal ideal_support_projection(std::span<const AlgebraElement> generators,
                                    double tol = kDefaultTol);

/// Artifacts of the closed-subideal construction inside the right ideal
/// generated by x.
struct SubidealWitness {
  double eps = 0.0;
  AlgebraElement a;   // x x*
  AlgebraElement p;   // chi_(eps, inf)(a)
  AlgebraElement fa;  // a g(a)
  RightIdeal K;
  double fa_p_residual = 0.0;      // ||fa p - p||_max
  double max_probe_residual = 0.0; // max over probes b of ||fa p b - b||_max
  std::size_t probe_count = 0;
  bool fa_p_ok = false;
  bool probes_ok = false;
};

/// The bridge function g: 0 below eps/2, linear up to 1/eps at eps, 1/t above.
double subideal_bridge(double t, double eps) noexcept;

/// Throws ZeroInput for x = 0.
SubidealWitness closed_subideal(const AlgebraElement& x, double tol = kDefaultTol);

struct IdealNonEssentialCertificate {
  std::size_t block = 0;
  std::vector<Complex> v;          // unit vector orthogonal to range(p) in `block`
  AlgebraElement q;                // v v* placed in `block`
  std::size_t intersection_dim = 0;  // complex dimension of pA cap qA, must be 0
};

struct IdealEssentiality {
  bool essential = false;
  std::optional<IdealNonEssentialCertificate> certificate;
};

IdealEssentiality is_essential_right_ideal(const RightIdeal& ideal, double tol = kDefaultTol);

/// Complex dimension of pA cap qA = n_b * dim(range p_b cap range q_b) summed over blocks.
std::size_t intersection_dimension(const RightIdeal& a, const RightIdeal& b);

}  // namespace essmod::algebra
