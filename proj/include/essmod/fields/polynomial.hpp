#pragma once
// Univariate polynomials in the real variable x with rational (RPoly) or
// Gaussian-rational (GPoly) coefficients, stored lowest degree first and
// kept trimmed. Root isolation uses Sturm sequences and exact bisection.

#include <utility>
#include <vector>

#include "essmod/fields/rational.hpp"

namespace essmod::fields {

class RPoly {
 public:
  RPoly() = default;
  explicit RPoly(std::vector<Rational> coeffs);
  static RPoly constant(Rational c);
  /// x - r
  static RPoly linear_root(const Rational& r);
  static RPoly x();

  [[nodiscard]] const std::vector<Rational>& coeffs() const noexcept { return c_; }
  /// -1 for the zero polynomial.
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  [[nodiscard]] const Rational& leading() const { return c_.back(); }
  [[nodiscard]] Rational operator()(const Rational& x) const;
  [[nodiscard]] RPoly derivative() const;

  RPoly& operator+=(const RPoly& o);
  RPoly& operator-=(const RPoly& o);
  friend RPoly operator+(RPoly a, const RPoly& b) { return a += b; }
  friend RPoly operator-(RPoly a, const RPoly& b) { return a -= b; }
  friend RPoly operator*(const RPoly& a, const RPoly& b);
  friend RPoly operator*(RPoly a, const Rational& s);
  friend bool operator==(const RPoly&, const RPoly&) = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Quotient and remainder; throws DomainError on division by zero.
std::pair<RPoly, RPoly> divmod(const RPoly& a, const RPoly& b);
/// Monic gcd; gcd(0, 0) = 0.
RPoly gcd(const RPoly& a, const RPoly& b);
/// p / gcd(p, p'), monic; zero for zero input.
RPoly squarefree_part(const RPoly& p);

class GPoly {
 public:
  GPoly() = default;
  explicit GPoly(std::vector<GaussianRational> coeffs);
  static GPoly constant(GaussianRational c);
  static GPoly from_real(const RPoly& p);

  [[nodiscard]] const std::vector<GaussianRational>& coeffs() const noexcept { return c_; }
  [[nodiscard]] int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  [[nodiscard]] bool is_zero() const noexcept { return c_.empty(); }
  [[nodiscard]] GaussianRational operator()(const Rational& x) const;
  /// Coefficientwise conjugate: the pointwise conjugate for real x.
  [[nodiscard]] GPoly conj() const;
  [[nodiscard]] RPoly real_part() const;
  [[nodiscard]] RPoly imag_part() const;
  /// |p(x)|^2 as a real polynomial.
  [[nodiscard]] RPoly abs2() const;

  GPoly& operator+=(const GPoly& o);
  GPoly& operator-=(const GPoly& o);
  friend GPoly operator+(GPoly a, const GPoly& b) { return a += b; }
  friend GPoly operator-(GPoly a, const GPoly& b) { return a -= b; }
  friend GPoly operator*(const GPoly& a, const GPoly& b);
  friend GPoly operator*(GPoly a, const GaussianRational& s);
  friend bool operator==(const GPoly&, const GPoly&) = default;

 private:
  void trim();
  std::vector<GaussianRational> c_;
};

/// Simplest rational (smallest denominator, then numerator) in [lo, hi].
Rational simplest_between(const Rational& lo, const Rational& hi);

/// One real root in the open interval (lo, hi): either exactly rational, or
/// bracketed by non-root rationals lo < a < root < b < hi.
struct RootBracket {
  bool exact = false;
  Rational a;
  Rational b;  // equals a when exact
};

/// Distinct real roots of p in the open interval (lo, hi), in increasing
/// order. p must be nonzero.
std::vector<RootBracket> isolate_roots(const RPoly& p, const Rational& lo, const Rational& hi);

/// Distinct roots of p in the closed interval [lo, hi]. Throws IrrationalRoot
/// if some root there is irrational; p must be nonzero.
std::vector<Rational> rational_roots_in(const RPoly& p, const Rational& lo, const Rational& hi);

/// Exact test of p(x) >= 0 for all x in [lo, hi].
bool nonnegative_on(const RPoly& p, const Rational& lo, const Rational& hi);

}  // namespace essmod::fields
