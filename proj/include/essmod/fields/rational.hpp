#pragma once
// Exact scalars for the continuous-field layer: GMP rationals and Gaussian
// rationals (re + i im with rational parts).

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace essmod::fields {

using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q" (canonicalized). Throws SchemaError.
Rational parse_rational(std::string_view text);
/// Canonical text form, "p/q" or "p" for integers.
std::string to_string(const Rational& q);

Rational abs(const Rational& q);
int sign(const Rational& q);
/// 2^-j
Rational pow2_neg(unsigned j);

struct GaussianRational {
  Rational re;
  Rational im;

  GaussianRational() : re(0), im(0) {}
  GaussianRational(Rational r) : re(std::move(r)), im(0) {}  // NOLINT: implicit by design of scalar embedding
  GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  GaussianRational(long r) : re(r), im(0) {}  // NOLINT

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] GaussianRational conj() const { return {re, -im}; }
  /// |z|^2
  [[nodiscard]] Rational norm2() const { return re * re + im * im; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }
};

std::string to_string(const GaussianRational& z);

}  // namespace essmod::fields
