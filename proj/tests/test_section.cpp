#include <doctest.h>

#include <optional>
#include <random>

#include "essmod/error.hpp"
#include "essmod/fields/section.hpp"

using namespace essmod;
using namespace essmod::fields;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

GaussianRational g(long re, long im = 0, long den = 1) { return {q(re, den), q(im, den)}; }

GPoly gp(std::vector<GaussianRational> c) { return GPoly(std::move(c)); }

// Scalar tent: 2x on [0, 1/2], 2 - 2x on [1/2, 1].
PiecewiseSection tent() {
  return PiecewiseSection(1, {q(0), q(1, 2), q(1)}, {{gp({g(0), g(2)})}, {gp({g(2), g(-2)})}});
}

std::optional<ErrorCode> code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("construction and evaluation") {
  const auto t = tent();
  CHECK(t(q(1, 4)) == std::vector{g(1, 0, 2)});
  CHECK(t(q(1, 2)) == std::vector{g(1)});
  CHECK(t(q(1)) == std::vector{g(0)});
  CHECK(PiecewiseSection::constant({g(1), g(0, 1)})(q(1, 3)) == std::vector{g(1), g(0, 1)});
  CHECK(PiecewiseSection::zero(3).is_zero());
  CHECK(PiecewiseSection::zero(3).dim() == 3);
}

TEST_CASE("malformed sections are rejected") {
  CHECK(code_of([] {
          (void)PiecewiseSection(1, {q(0), q(1, 2), q(1)}, {{gp({g(0), g(2)})}, {gp({g(0)})}});
        }) == ErrorCode::PreconditionFailed);
  CHECK(code_of([] { (void)PiecewiseSection(1, {q(0), q(1)}, {{gp({g(0)})}, {gp({g(0)})}}); }) ==
        ErrorCode::DimensionMismatch);
  CHECK(code_of([] { (void)PiecewiseSection(2, {q(0), q(1)}, {{gp({g(0)})}}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("bump") {
  const auto b = PiecewiseSection::bump(q(1, 4), q(3, 4), q(16));
  CHECK(b(q(1, 2)) == std::vector{g(1)});
  CHECK(b(q(1, 8)) == std::vector{g(0)});
  CHECK(b(q(1, 4)) == std::vector{g(0)});
  CHECK(b.support_set() == SymbolicSubset::open_interval(q(1, 4), q(3, 4)));
  CHECK(b.sup_norm_at_most(q(1)));
  CHECK_FALSE(b.sup_norm_at_most(q(99, 100)));
  // Clipped at the boundary.
  const auto edge = PiecewiseSection::bump(q(-1, 2), q(1, 2), q(4));
  CHECK(edge(q(0)) == std::vector{g(1)});
  CHECK(edge.support_set() == SymbolicSubset::interval(q(0), q(1, 2), true, false));
}

TEST_CASE("support sets") {
  CHECK(tent().support_set() == SymbolicSubset::interval(q(0), q(1), false, false));
  // The coordinates never vanish together.
  const auto pair = PiecewiseSection::polynomial({gp({g(0), g(1)}), gp({g(-1, 0, 2), g(1)})});
  CHECK(pair.support_set() == SymbolicSubset::whole());
  // x^2 - 2 has no root in [0, 1], x^2 - 1/2 has an irrational one.
  CHECK(PiecewiseSection::polynomial({gp({g(-2), g(0), g(1)})}).support_set() == SymbolicSubset::whole());
  CHECK(code_of([] {
          (void)PiecewiseSection::polynomial({gp({g(-1, 0, 2), g(0), g(1)})}).support_set();
        }) == ErrorCode::IrrationalRoot);
  // Zero on a whole piece.
  const PiecewiseSection half(1, {q(0), q(1, 2), q(1)}, {{gp({g(0)})}, {gp({g(-1, 0, 2), g(1)})}});
  CHECK(half.support_set() == SymbolicSubset::interval(q(1, 2), q(1), false, true));
}

TEST_CASE("sup norm uses the euclidean norm") {
  const auto c = PiecewiseSection::constant({g(3, 0, 5), g(0, 4, 5)});
  CHECK(c.sup_norm_at_most(q(1)));
  CHECK_FALSE(c.sup_norm_at_most(q(999, 1000)));
  CHECK(tent().sup_norm_at_most(q(1)));
}

TEST_CASE("arithmetic and module action") {
  const auto t = tent();
  const auto x = PiecewiseSection::polynomial({gp({g(0), g(1)})});
  const auto prod = t * x;
  const auto sum = t + x;
  const auto scaled = t * g(0, 2);
  for (long k = 0; k <= 12; ++k) {
    const Rational pt = q(k, 12);
    CHECK(prod(pt)[0] == t(pt)[0] * x(pt)[0]);
    CHECK(sum(pt)[0] == t(pt)[0] + x(pt)[0]);
    CHECK(scaled(pt)[0] == t(pt)[0] * g(0, 2));
  }
  CHECK((t - t).is_zero());
  CHECK(t.refined({q(0), q(1, 4), q(1, 2), q(1)}) == t);
  CHECK(t.refined({q(0), q(1, 4), q(1, 2), q(1)}).piece_count() == 3);
  CHECK(merge_grids({q(0), q(1, 2), q(1)}, {q(0), q(1, 3), q(1)}) ==
        std::vector<Rational>{q(0), q(1, 3), q(1, 2), q(1)});
}

TEST_CASE("pointwise inner product is conjugate linear in the first slot") {
  std::mt19937 gen(3);
  std::uniform_int_distribution<long> c(-4, 4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<GPoly> uc, vc;
    for (int i = 0; i < 2; ++i) {
      uc.push_back(gp({g(c(gen), c(gen)), g(c(gen), c(gen))}));
      vc.push_back(gp({g(c(gen), c(gen)), g(c(gen), c(gen))}));
    }
    const auto u = PiecewiseSection::polynomial(uc);
    const auto v = PiecewiseSection::polynomial(vc);
    const auto uv = inner(u, v);
    const auto vu = inner(v, u);
    const auto lam = g(c(gen), c(gen));
    const auto scaled = inner(u * lam, v);
    for (long k = 0; k <= 6; ++k) {
      const Rational pt = q(k, 6);
      const auto uu = u(pt), vv = v(pt);
      GaussianRational expect;
      for (int i = 0; i < 2; ++i) expect = expect + uu[i].conj() * vv[i];
      CHECK(uv(pt)[0] == expect);
      CHECK(vu(pt)[0] == expect.conj());
      CHECK(scaled(pt)[0] == lam.conj() * expect);
    }
  }
}

TEST_CASE("common zero sets") {
  const auto a = gp({g(-1, 0, 4), g(1)});                       // x - 1/4
  const auto b = gp({g(1, 0, 8), g(-3, 0, 4), g(1)});           // (x - 1/4)(x - 1/2)
  CHECK(common_zero_set({a, b}, q(0), q(1)) == SymbolicSubset::point(q(1, 4)));
  CHECK(common_zero_set({b}, q(0), q(1)) == SymbolicSubset::from_pieces({q(1, 4), q(1, 2)}, {}));
  CHECK(common_zero_set({b}, q(1, 3), q(1)) == SymbolicSubset::point(q(1, 2)));
  CHECK(common_zero_set({GPoly(), GPoly()}, q(1, 3), q(2, 3)) == SymbolicSubset::closed_interval(q(1, 3), q(2, 3)));
  // Complex coefficients: (x - 1/4) + i (x - 1/4) vanishes only at 1/4.
  CHECK(common_zero_set({gp({g(-1, -1, 4), g(1, 1)})}, q(0), q(1)) == SymbolicSubset::point(q(1, 4)));
}
