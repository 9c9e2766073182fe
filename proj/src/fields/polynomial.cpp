#include "essmod/fields/polynomial.hpp"

#include <algorithm>
#include <functional>

#include "essmod/error.hpp"

namespace essmod::fields {

RPoly::RPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

RPoly RPoly::constant(Rational c) { return RPoly({std::move(c)}); }

RPoly RPoly::linear_root(const Rational& r) { return RPoly({-r, Rational(1)}); }

RPoly RPoly::x() { return RPoly({Rational(0), Rational(1)}); }

void RPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Rational RPoly::operator()(const Rational& x) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RPoly RPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return RPoly(std::move(d));
}

RPoly& RPoly::operator+=(const RPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

RPoly& RPoly::operator-=(const RPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

RPoly operator*(const RPoly& a, const RPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return RPoly(std::move(c));
}

RPoly operator*(RPoly a, const Rational& s) {
  for (auto& c : a.c_) c *= s;
  a.trim();
  return a;
}

std::pair<RPoly, RPoly> divmod(const RPoly& a, const RPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DomainError, "polynomial division by zero");
  std::vector<Rational> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  std::vector<Rational> quot(std::max(a.degree() - db + 1, 0), Rational(0));
  for (int d = a.degree(); d >= db; --d) {
    const Rational factor = rem[d] / bc[db];
    if (sgn(factor) == 0) continue;
    quot[d - db] = factor;
    for (int i = 0; i <= db; ++i) rem[d - db + i] -= factor * bc[i];
  }
  return {RPoly(std::move(quot)), RPoly(std::move(rem))};
}

namespace {

RPoly monic(const RPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / p.leading());
}

// Positive rescaling keeps signs (Sturm chains) while taming coefficient growth.
RPoly normalized_abs(const RPoly& p) {
  if (p.is_zero()) return p;
  return p * Rational(1 / abs(p.leading()));
}

int sign_at(const RPoly& p, const Rational& x) { return sgn(p(x)); }

}  // namespace

RPoly gcd(const RPoly& a, const RPoly& b) {
  RPoly x = a;
  RPoly y = b;
  while (!y.is_zero()) {
    RPoly r = divmod(x, y).second;
    x = std::move(y);
    y = monic(r);
  }
  return monic(x);
}

RPoly squarefree_part(const RPoly& p) {
  if (p.is_zero()) return p;
  if (p.degree() == 0) return RPoly::constant(Rational(1));
  return monic(divmod(p, gcd(p, p.derivative())).first);
}

GPoly::GPoly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

GPoly GPoly::constant(GaussianRational c) { return GPoly({std::move(c)}); }

GPoly GPoly::from_real(const RPoly& p) {
  std::vector<GaussianRational> c;
  for (const auto& r : p.coeffs()) c.emplace_back(r);
  return GPoly(std::move(c));
}

void GPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GaussianRational GPoly::operator()(const Rational& x) const {
  GaussianRational acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc.re = acc.re * x + it->re;
    acc.im = acc.im * x + it->im;
  }
  return acc;
}

GPoly GPoly::conj() const {
  std::vector<GaussianRational> c;
  for (const auto& z : c_) c.push_back(z.conj());
  return GPoly(std::move(c));
}

RPoly GPoly::real_part() const {
  std::vector<Rational> c;
  for (const auto& z : c_) c.push_back(z.re);
  return RPoly(std::move(c));
}

RPoly GPoly::imag_part() const {
  std::vector<Rational> c;
  for (const auto& z : c_) c.push_back(z.im);
  return RPoly(std::move(c));
}

RPoly GPoly::abs2() const {
  const RPoly re = real_part();
  const RPoly im = imag_part();
  return re * re + im * im;
}

GPoly& GPoly::operator+=(const GPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

GPoly& GPoly::operator-=(const GPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

GPoly operator*(const GPoly& a, const GPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return GPoly(std::move(c));
}

GPoly operator*(GPoly a, const GaussianRational& s) {
  for (auto& c : a.c_) c *= s;
  a.trim();
  return a;
}

Rational simplest_between(const Rational& lo, const Rational& hi) {
  if (lo > hi) return simplest_between(hi, lo);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rational(0);
  if (sgn(hi) < 0) return Rational(-simplest_between(-hi, -lo));
  // 0 < lo <= hi
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
  if (Rational(fl) == lo) return lo;
  mpz_class fh;
  mpz_fdiv_q(fh.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  if (fl < fh) return Rational(fl + 1);
  const Rational inner = simplest_between(Rational(1 / Rational(hi - fl)), Rational(1 / Rational(lo - fl)));
  return Rational(Rational(fl) + 1 / inner);
}

namespace {

class SturmChain {
 public:
  explicit SturmChain(const RPoly& squarefree) {
    chain_.push_back(normalized_abs(squarefree));
    chain_.push_back(normalized_abs(squarefree.derivative()));
    while (!chain_.back().is_zero()) {
      RPoly r = divmod(chain_[chain_.size() - 2], chain_.back()).second;
      chain_.push_back(normalized_abs(r * Rational(-1)));
    }
    chain_.pop_back();
  }

  // Sign variations; for squarefree p, V(a) - V(b) counts roots in (a, b].
  [[nodiscard]] int variations(const Rational& x) const {
    int count = 0;
    int last = 0;
    for (const auto& p : chain_) {
      const int s = sign_at(p, x);
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  [[nodiscard]] const RPoly& base() const { return chain_.front(); }

 private:
  std::vector<RPoly> chain_;
};

}  // namespace

std::vector<RootBracket> isolate_roots(const RPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error(ErrorCode::DomainError, "root isolation of the zero polynomial");
  std::vector<RootBracket> out;
  if (lo >= hi || p.degree() == 0) return out;
  const RPoly s = squarefree_part(p);
  const SturmChain sturm(s);
  const auto open_count = [&](const Rational& a, const Rational& b) {
    return sturm.variations(a) - sturm.variations(b) - (sign_at(s, b) == 0 ? 1 : 0);
  };
  std::function<void(const Rational&, const Rational&, int)> split =
      [&](const Rational& a, const Rational& b, int count) {
        if (count <= 0) return;
        if (count == 1 && a != lo && b != hi && sign_at(s, a) != 0 && sign_at(s, b) != 0) {
          out.push_back({false, a, b});
          return;
        }
        const Rational mid = (a + b) / 2;
        const bool mid_root = sign_at(s, mid) == 0;
        const int left = open_count(a, mid);
        if (mid_root) out.push_back({true, mid, mid});
        split(a, mid, left);
        split(mid, b, count - left - (mid_root ? 1 : 0));
      };
  split(lo, hi, open_count(lo, hi));
  std::sort(out.begin(), out.end(), [](const RootBracket& x, const RootBracket& y) { return x.a < y.a; });
  return out;
}

std::vector<Rational> rational_roots_in(const RPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw Error(ErrorCode::DomainError, "rational_roots_in of the zero polynomial");
  std::vector<Rational> roots;
  if (lo > hi) return roots;
  if (sign_at(p, lo) == 0) roots.push_back(lo);
  if (lo == hi) return roots;

  const RPoly s = squarefree_part(p);
  // Integer leading coefficient of the primitive integer multiple of s: any
  // rational root has a denominator dividing it, so distinct candidate roots
  // are at least 1/lead^2 apart.
  mpz_class den_lcm = 1;
  for (const auto& c : s.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  mpz_class num_gcd = 0;
  for (const auto& c : s.coeffs()) {
    mpz_class scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  mpz_class lead = s.leading().get_num() * (den_lcm / s.leading().get_den());
  mpz_abs(lead.get_mpz_t(), lead.get_mpz_t());
  lead /= num_gcd;
  const Rational separation(mpz_class(1), mpz_class(lead * lead));

  for (auto bracket : isolate_roots(s, lo, hi)) {
    if (bracket.exact) {
      roots.push_back(bracket.a);
      continue;
    }
    Rational a = bracket.a;
    Rational b = bracket.b;
    const int sa = sign_at(s, a);
    for (;;) {
      const Rational candidate = simplest_between(a, b);
      if (sign_at(s, candidate) == 0) {
        roots.push_back(candidate);
        break;
      }
      if (b - a < separation) {
        throw Error(ErrorCode::IrrationalRoot,
                    "irrational root in (" + to_string(a) + ", " + to_string(b) + ")");
      }
      const Rational mid = (a + b) / 2;
      const int sm = sign_at(s, mid);
      if (sm == 0) {
        roots.push_back(mid);
        break;
      }
      if (sm == sa) {
        a = mid;
      } else {
        b = mid;
      }
    }
  }
  if (sign_at(p, hi) == 0) roots.push_back(hi);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

bool nonnegative_on(const RPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) return true;
  std::vector<Rational> samples{lo, hi};
  for (const auto& bracket : isolate_roots(p, lo, hi)) {
    samples.push_back(bracket.a);
    samples.push_back(bracket.b);
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());
  // The sign is constant between consecutive roots and every such gap holds
  // a bracket endpoint; midpoints cover the gaps next to exact roots.
  const std::size_t n = samples.size();
  for (std::size_t i = 0; i + 1 < n; ++i) samples.push_back((samples[i] + samples[i + 1]) / 2);
  return std::all_of(samples.begin(), samples.end(), [&](const Rational& x) { return sgn(p(x)) >= 0; });
}

}  // namespace essmod::fields
