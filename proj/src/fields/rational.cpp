#include "essmod/fields/rational.hpp"

#include <cctype>

#include "essmod/error.hpp"

namespace essmod::fields {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto valid_integer = [](std::string_view part) {
    std::size_t i = 0;
    if (i < part.size() && (part[i] == '-' || part[i] == '+')) ++i;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    }
    return true;
  };
  const auto slash = s.find('/');
  const std::string num = s.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+') {
    throw Error(ErrorCode::SchemaError, "not a rational literal: '" + s + "'");
  }
  mpz_class n(num.front() == '+' ? num.substr(1) : num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw Error(ErrorCode::SchemaError, "zero denominator in '" + s + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational abs(const Rational& q) { return sgn(q) < 0 ? Rational(-q) : q; }

int sign(const Rational& q) { return sgn(q); }

Rational pow2_neg(unsigned j) {
  mpz_class den = 1;
  den <<= j;
  return Rational(mpz_class(1), den);
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  const Rational den = o.norm2();
  if (sgn(den) == 0) throw Error(ErrorCode::DomainError, "division by zero Gaussian rational");
  *this *= o.conj();
  re /= den;
  im /= den;
  return *this;
}

std::string to_string(const GaussianRational& z) {
  if (sgn(z.im) == 0) return to_string(z.re);
  return "(" + to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + to_string(abs(z.im)) + "i)";
}

}  // namespace essmod::fields
