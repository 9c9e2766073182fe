#include "essmod/fields/section.hpp"

#include <algorithm>

#include "essmod/error.hpp"

namespace essmod::fields {

PiecewiseSection::PiecewiseSection(std::size_t d, std::vector<Rational> breakpoints,
                                   std::vector<std::vector<GPoly>> pieces)
    : d_(d), breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (d_ == 0) throw Error(ErrorCode::DimensionMismatch, "fiber dimension must be positive");
  if (breaks_.size() < 2 || sgn(breaks_.front()) != 0 || breaks_.back() != 1) {
    throw Error(ErrorCode::DimensionMismatch, "breakpoints must run from 0 to 1");
  }
  for (std::size_t i = 0; i + 1 < breaks_.size(); ++i) {
    if (!(breaks_[i] < breaks_[i + 1])) {
      throw Error(ErrorCode::DimensionMismatch, "breakpoints must be strictly increasing");
    }
  }
  if (pieces_.size() != breaks_.size() - 1) {
    throw Error(ErrorCode::DimensionMismatch, "need one piece per breakpoint interval");
  }
  for (const auto& piece : pieces_) {
    if (piece.size() != d_) throw Error(ErrorCode::DimensionMismatch, "piece has wrong fiber dimension");
  }
  for (std::size_t i = 0; i + 1 < pieces_.size(); ++i) {
    const Rational& t = breaks_[i + 1];
    for (std::size_t j = 0; j < d_; ++j) {
      if (!(pieces_[i][j](t) == pieces_[i + 1][j](t))) {
        throw Error(ErrorCode::PreconditionFailed, "section is discontinuous at " + to_string(t));
      }
    }
  }
}

PiecewiseSection PiecewiseSection::constant(const std::vector<GaussianRational>& value) {
  std::vector<GPoly> coords;
  for (const auto& z : value) coords.push_back(GPoly::constant(z));
  return polynomial(std::move(coords));
}

PiecewiseSection PiecewiseSection::polynomial(std::vector<GPoly> coords) {
  const std::size_t d = coords.size();
  return {d, {Rational(0), Rational(1)}, {std::move(coords)}};
}

PiecewiseSection PiecewiseSection::zero(std::size_t d) {
  return polynomial(std::vector<GPoly>(d));
}

PiecewiseSection PiecewiseSection::bump(const Rational& alpha, const Rational& beta, const Rational& scale) {
  const Rational lo = std::max(alpha, Rational(0));
  const Rational hi = std::min(beta, Rational(1));
  if (!(alpha < beta) || !(lo < hi)) {
    throw Error(ErrorCode::DomainError, "bump support must meet (0, 1) in an interval");
  }
  // scale * (x - alpha)(beta - x)
  const GPoly p = GPoly::from_real(RPoly({-alpha * beta, alpha + beta, Rational(-1)}) * scale);
  std::vector<Rational> grid{Rational(0)};
  if (sgn(lo) > 0) grid.push_back(lo);
  if (hi < 1) grid.push_back(hi);
  grid.push_back(Rational(1));
  std::vector<std::vector<GPoly>> pieces;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const bool inside = grid[i] >= lo && grid[i + 1] <= hi;
    pieces.push_back({inside ? p : GPoly()});
  }
  return {1, std::move(grid), std::move(pieces)};
}

std::vector<GaussianRational> PiecewiseSection::operator()(const Rational& x) const {
  if (sgn(x) < 0 || x > 1) throw Error(ErrorCode::OutOfRange, "evaluation point outside [0,1]");
  std::size_t i = 0;
  while (i + 1 < pieces_.size() && x > breaks_[i + 1]) ++i;
  std::vector<GaussianRational> out;
  out.reserve(d_);
  for (const auto& p : pieces_[i]) out.push_back(p(x));
  return out;
}

PiecewiseSection PiecewiseSection::refined(const std::vector<Rational>& grid) const {
  std::vector<std::vector<GPoly>> pieces;
  std::size_t src = 0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    while (src + 1 < pieces_.size() && grid[i] >= breaks_[src + 1]) ++src;
    if (grid[i + 1] > breaks_[src + 1]) {
      throw Error(ErrorCode::DimensionMismatch, "refinement grid must contain the breakpoints");
    }
    pieces.push_back(pieces_[src]);
  }
  return {d_, grid, std::move(pieces)};
}

bool PiecewiseSection::is_zero() const {
  for (const auto& piece : pieces_) {
    for (const auto& p : piece) {
      if (!p.is_zero()) return false;
    }
  }
  return true;
}

SymbolicSubset PiecewiseSection::support_set() const {
  SymbolicSubset out;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const auto piece = SymbolicSubset::closed_interval(breaks_[i], breaks_[i + 1]);
    out = out.unite(piece.minus(common_zero_set(pieces_[i], breaks_[i], breaks_[i + 1])));
  }
  return out;
}

bool PiecewiseSection::sup_norm_at_most(const Rational& bound) const {
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    RPoly slack = RPoly::constant(bound * bound);
    for (const auto& p : pieces_[i]) slack -= p.abs2();
    if (!nonnegative_on(slack, breaks_[i], breaks_[i + 1])) return false;
  }
  return true;
}

std::vector<Rational> merge_grids(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Merges neighbouring pieces that carry identical polynomials.
PiecewiseSection simplified(std::size_t d, const std::vector<Rational>& grid,
                            std::vector<std::vector<GPoly>> pieces) {
  std::vector<Rational> breaks{grid.front()};
  std::vector<std::vector<GPoly>> merged;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (!merged.empty() && merged.back() == pieces[i]) {
      breaks.back() = grid[i + 1];
      continue;
    }
    merged.push_back(std::move(pieces[i]));
    breaks.push_back(grid[i + 1]);
  }
  return {d, std::move(breaks), std::move(merged)};
}

template <typename Op>
PiecewiseSection combine(const PiecewiseSection& a, const PiecewiseSection& b, std::size_t out_dim, Op op) {
  const auto grid = merge_grids(a.breakpoints(), b.breakpoints());
  const auto ra = a.refined(grid);
  const auto rb = b.refined(grid);
  std::vector<std::vector<GPoly>> pieces;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) pieces.push_back(op(ra.pieces()[i], rb.pieces()[i]));
  return simplified(out_dim, grid, std::move(pieces));
}

}  // namespace

PiecewiseSection operator+(const PiecewiseSection& a, const PiecewiseSection& b) {
  if (a.d_ != b.d_) throw Error(ErrorCode::DimensionMismatch, "sum of sections of different dimension");
  return combine(a, b, a.d_, [](const std::vector<GPoly>& x, const std::vector<GPoly>& y) {
    std::vector<GPoly> out = x;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += y[j];
    return out;
  });
}

PiecewiseSection operator-(const PiecewiseSection& a, const PiecewiseSection& b) {
  if (a.d_ != b.d_) throw Error(ErrorCode::DimensionMismatch, "difference of sections of different dimension");
  return combine(a, b, a.d_, [](const std::vector<GPoly>& x, const std::vector<GPoly>& y) {
    std::vector<GPoly> out = x;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] -= y[j];
    return out;
  });
}

PiecewiseSection operator*(const PiecewiseSection& s, const GaussianRational& c) {
  auto pieces = s.pieces_;
  for (auto& piece : pieces) {
    for (auto& p : piece) p = p * c;
  }
  return simplified(s.d_, s.breaks_, std::move(pieces));
}

PiecewiseSection operator*(const PiecewiseSection& s, const PiecewiseSection& scalar) {
  if (scalar.d_ != 1) throw Error(ErrorCode::DimensionMismatch, "module action needs a scalar function");
  return combine(s, scalar, s.d_, [](const std::vector<GPoly>& x, const std::vector<GPoly>& f) {
    std::vector<GPoly> out;
    for (const auto& p : x) out.push_back(p * f[0]);
    return out;
  });
}

bool operator==(const PiecewiseSection& a, const PiecewiseSection& b) {
  if (a.d_ != b.d_) return false;
  return (a - b).is_zero();
}

PiecewiseSection inner(const PiecewiseSection& u, const PiecewiseSection& v) {
  if (u.dim() != v.dim()) throw Error(ErrorCode::DimensionMismatch, "inner product of sections of different dimension");
  return combine(u, v, 1, [](const std::vector<GPoly>& x, const std::vector<GPoly>& y) {
    GPoly sum;
    for (std::size_t j = 0; j < x.size(); ++j) sum += x[j].conj() * y[j];
    return std::vector<GPoly>{sum};
  });
}

SymbolicSubset common_zero_set(const std::vector<GPoly>& polys, const Rational& lo, const Rational& hi) {
  RPoly g;
  for (const auto& p : polys) {
    for (const RPoly& part : {p.real_part(), p.imag_part()}) {
      if (!part.is_zero()) g = gcd(g, part);
    }
  }
  if (g.is_zero()) return SymbolicSubset::closed_interval(lo, hi);
  if (g.degree() == 0) return {};
  return SymbolicSubset::from_pieces(rational_roots_in(g, lo, hi), {});
}

}  // namespace essmod::fields
