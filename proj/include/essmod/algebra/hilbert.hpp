#pragma once
// The free Hilbert module A^k over a finite-dimensional C*-algebra A, with
// A-valued inner product <x, y> = sum_i x_i* y_i. Its compact operators are
// all of M_k(A), which we identify with the algebra of shape k*n_i so that
// the right-ideal machinery of cstar.hpp applies verbatim.

#include <optional>
#include <span>
#include <vector>

#include "essmod/algebra/cstar.hpp"

namespace essmod::algebra {

class ModuleElement {
 public:
  ModuleElement() = default;
  ModuleElement(AlgebraShape shape, std::vector<AlgebraElement> coords);

  static ModuleElement zero(const AlgebraShape& shape, std::size_t k);
  /// delta_j (x) 1: the j-th standard generator of A^k.
  static ModuleElement unit(const AlgebraShape& shape, std::size_t k, std::size_t j);
  /// delta_j (x) e for every coordinate j and matrix unit e (a complex basis).
  static std::vector<ModuleElement> basis(const AlgebraShape& shape, std::size_t k);
  static ModuleElement from_vector(const AlgebraShape& shape, std::size_t k,
                                   std::span<const Complex> v);

  [[nodiscard]] const AlgebraShape& shape() const noexcept { return shape_; }
  [[nodiscard]] std::size_t k() const noexcept { return coords_.size(); }
  [[nodiscard]] const std::vector<AlgebraElement>& coords() const noexcept { return coords_; }
  [[nodiscard]] const AlgebraElement& coord(std::size_t i) const { return coords_.at(i); }

  /// Module norm ||<x, x>||^(1/2).
  [[nodiscard]] double norm() const;
  [[nodiscard]] std::vector<Complex> to_vector() const;
  /// Coordinates stacked in block b: a (k n_b) x n_b matrix.
  [[nodiscard]] CMatrix stacked_block(std::size_t b) const;

  ModuleElement& operator+=(const ModuleElement& other);
  ModuleElement& operator-=(const ModuleElement& other);
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const ModuleElement& x, Complex s);
  /// Right module action x a.
  friend ModuleElement operator*(const ModuleElement& x, const AlgebraElement& a);

 private:
  AlgebraShape shape_;
  std::vector<AlgebraElement> coords_;
};

double max_abs_diff(const ModuleElement& a, const ModuleElement& b);

/// <x, y> = sum_i x_i* y_i. Throws ShapeMismatch.
AlgebraElement inner_product(const ModuleElement& x, const ModuleElement& y);

/// A k x k matrix over A acting on A^k.
class CompactOperator {
 public:
  CompactOperator(AlgebraShape shape, std::size_t k, std::vector<AlgebraElement> entries);

  static CompactOperator zero(const AlgebraShape& shape, std::size_t k);
  static CompactOperator identity(const AlgebraShape& shape, std::size_t k);
  static CompactOperator from_algebra_element(const AlgebraShape& shape, std::size_t k,
                                              const AlgebraElement& amplified);

  [[nodiscard]] const AlgebraShape& shape() const noexcept { return shape_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] const AlgebraElement& entry(std::size_t i, std::size_t j) const {
    return entries_.at(i * k_ + j);
  }
  [[nodiscard]] const std::vector<AlgebraElement>& entries() const noexcept { return entries_; }

  [[nodiscard]] ModuleElement apply(const ModuleElement& z) const;
  [[nodiscard]] CompactOperator adjoint() const;
  /// The same operator as an element of the algebra of shape k*n_i.
  [[nodiscard]] AlgebraElement to_algebra_element() const;
  [[nodiscard]] double norm() const;

  friend CompactOperator operator*(const CompactOperator& a, const CompactOperator& b);
  friend CompactOperator operator-(const CompactOperator& a, const CompactOperator& b);
  friend CompactOperator operator+(const CompactOperator& a, const CompactOperator& b);

 private:
  AlgebraShape shape_;
  std::size_t k_ = 0;
  std::vector<AlgebraElement> entries_;
};

double max_abs_diff(const CompactOperator& a, const CompactOperator& b);

/// Theta_{x,y}(z) = x <y, z>; entry (i, j) is x_i y_j*.
CompactOperator theta(const ModuleElement& x, const ModuleElement& y);

/// The A-submodule generated by a finite set; as a complex subspace of A^k it
/// is span{g e : g generator, e matrix unit}, held by an orthonormal basis.
class Submodule {
 public:
  Submodule(AlgebraShape shape, std::size_t k, std::vector<ModuleElement> generators);

  static Submodule whole(const AlgebraShape& shape, std::size_t k);
  static Submodule zero(const AlgebraShape& shape, std::size_t k);

  [[nodiscard]] const AlgebraShape& shape() const noexcept { return shape_; }
  [[nodiscard]] std::size_t k() const noexcept { return k_; }
  [[nodiscard]] const std::vector<ModuleElement>& generators() const noexcept { return generators_; }
  /// Complex dimension of the submodule.
  [[nodiscard]] std::size_t dimension() const noexcept { return basis_.cols(); }
  /// Complex dimension of the ambient module k * dim A.
  [[nodiscard]] std::size_t ambient_dimension() const noexcept { return k_ * shape_.dimension(); }
  /// Orthonormal basis columns.
  [[nodiscard]] const CMatrix& basis() const noexcept { return basis_; }
  [[nodiscard]] std::vector<ModuleElement> basis_elements() const;

  [[nodiscard]] double distance(const ModuleElement& m) const;
  [[nodiscard]] bool contains(const ModuleElement& m, double tol = 1e-9) const;
  /// Equality as complex subspaces.
  [[nodiscard]] bool same_span(const Submodule& other, double tol = 1e-9) const;

 private:
  AlgebraShape shape_;
  std::size_t k_;
  std::vector<ModuleElement> generators_;
  CMatrix basis_;
};

/// J_N = {T in K(M) : Ran T in N}, a right ideal of the algebra of shape k*n_i,
/// built from the spanning set {Theta_{n, delta_j} : n in a basis of N}.
RightIdeal ideal_of_submodule(const Submodule& n);

/// T in J_N iff T maps every module basis vector into N.
bool in_ideal_of_submodule(const CompactOperator& t, const Submodule& n, double tol = 1e-9);

/// The submodule J M, generated by p delta_j for the support projection p.
Submodule submodule_of_ideal(const RightIdeal& ideal, const AlgebraShape& shape, std::size_t k);

struct ProbeResult {
  bool found = false;
  std::optional<AlgebraElement> a;  // witness with m a in N, m a != 0
  double witness_norm = 0.0;        // ||m a||
  std::size_t solution_dim = 0;     // complex dimension of {a : m a in N}
};

/// Is there a in A with m a in N and m a != 0? Throws ZeroInput for m = 0.
ProbeResult reformulation_probe(const ModuleElement& m, const Submodule& n, double tol = 1e-9);

struct SubmoduleEssentiality {
  bool essential = false;               // reported decision (via J_N)
  bool essential_flag = false;          // (E): N equals the ambient module
  bool topologically_essential = false; // (TE): J_N essential in K(M)
  bool flags_agree = false;
  std::optional<ModuleElement> certificate;  // m != 0 with mA cap N = 0
  bool certificate_verified = false;
};

SubmoduleEssentiality is_essential_submodule(const Submodule& n);

}  // namespace essmod::algebra
