#pragma once

#include <vector>

#include "essmod/fields/polynomial.hpp"
#include "essmod/fields/subset.hpp"

namespace essmod::fields {

/// Continuous map [0, 1] -> C^d, polynomial on each [t_i, t_{i+1}] of a
/// rational breakpoint grid 0 = t_0 < ... < t_s = 1. Polynomials are in the
/// global variable x. Scalar functions in C([0, 1]) are the d = 1 case.
class PiecewiseSection {
 public:
  /// Throws DimensionMismatch on malformed data and PreconditionFailed if
  /// neighbouring pieces disagree at a breakpoint.
  PiecewiseSection(std::size_t d, std::vector<Rational> breakpoints, std::vector<std::vector<GPoly>> pieces);

  static PiecewiseSection constant(const std::vector<GaussianRational>& value);
  static PiecewiseSection polynomial(std::vector<GPoly> coords);
  static PiecewiseSection zero(std::size_t d);
  /// Scalar bump scale*(x - alpha)(beta - x) on [alpha, beta] clipped to [0, 1], zero elsewhere.
  static PiecewiseSection bump(const Rational& alpha, const Rational& beta, const Rational& scale = Rational(1));

  [[nodiscard]] std::size_t dim() const noexcept { return d_; }
  [[nodiscard]] const std::vector<Rational>& breakpoints() const noexcept { return breaks_; }
  [[nodiscard]] const std::vector<std::vector<GPoly>>& pieces() const noexcept { return pieces_; }
  [[nodiscard]] std::size_t piece_count() const noexcept { return pieces_.size(); }

  [[nodiscard]] std::vector<GaussianRational> operator()(const Rational& x) const;
  /// Same map on a finer grid (must contain the current breakpoints).
  [[nodiscard]] PiecewiseSection refined(const std::vector<Rational>& grid) const;
  [[nodiscard]] bool is_zero() const;
  /// {x : section(x) != 0}, exact. Throws IrrationalRoot.
  [[nodiscard]] SymbolicSubset support_set() const;
  /// Exact test of |s(x)| <= bound for all x in [0, 1] (euclidean norm on C^d).
  [[nodiscard]] bool sup_norm_at_most(const Rational& bound) const;

  friend PiecewiseSection operator+(const PiecewiseSection& a, const PiecewiseSection& b);
  friend PiecewiseSection operator-(const PiecewiseSection& a, const PiecewiseSection& b);
  friend PiecewiseSection operator*(const PiecewiseSection& s, const GaussianRational& c);
  /// Module action: section times scalar function (d = 1).
  friend PiecewiseSection operator*(const PiecewiseSection& s, const PiecewiseSection& scalar);
  /// Exact equality as maps.
  friend bool operator==(const PiecewiseSection& a, const PiecewiseSection& b);

 private:
  std::size_t d_;
  std::vector<Rational> breaks_;
  std::vector<std::vector<GPoly>> pieces_;
};

/// Union of two breakpoint grids.
std::vector<Rational> merge_grids(const std::vector<Rational>& a, const std::vector<Rational>& b);

/// Pointwise <u, v>(x) = sum_i conj(u_i(x)) v_i(x), a scalar section.
PiecewiseSection inner(const PiecewiseSection& u, const PiecewiseSection& v);

/// Common real zeros in [lo, hi] of the given polynomials: either all of
/// [lo, hi] (every polynomial is zero) or a finite set of rationals.
/// Throws IrrationalRoot.
SymbolicSubset common_zero_set(const std::vector<GPoly>& polys, const Rational& lo, const Rational& hi);

}  // namespace essmod::fields
