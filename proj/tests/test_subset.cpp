#include <doctest.h>

#include <random>

#include "essmod/error.hpp"
#include "essmod/fields/subset.hpp"

using namespace essmod;
using namespace essmod::fields;

namespace {

Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

using S = SymbolicSubset;

// Sets whose endpoints lie on the grid k/8. Such a set is determined by its
// membership at the points k/16.
S random_grid_set(std::mt19937& gen) {
  std::uniform_int_distribution<int> count(0, 3), pos(0, 8), coin(0, 1);
  std::vector<Rational> points;
  std::vector<Interval> intervals;
  for (int i = count(gen); i > 0; --i) points.push_back(q(pos(gen), 8));
  for (int i = count(gen); i > 0; --i) {
    int a = pos(gen), b = pos(gen);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    intervals.push_back({q(a, 8), q(b, 8), coin(gen) == 1, coin(gen) == 1});
  }
  return S::from_pieces(points, intervals);
}

std::vector<bool> grid_membership(const S& s) {
  std::vector<bool> m;
  for (int k = 0; k <= 16; ++k) m.push_back(s.contains(q(k, 16)));
  return m;
}

}  // namespace

TEST_CASE("normalization examples") {
  const auto a = S::from_pieces({q(1, 2)}, {{q(0), q(1, 2), false, false}});
  CHECK(a == S::interval(q(0), q(1, 2), false, true));
  CHECK(to_string(a) == "(0, 1/2]");

  const auto b = S::from_pieces({}, {{q(0), q(1, 2), true, true}, {q(1, 4), q(3, 4), true, true}});
  CHECK(b == S::closed_interval(q(0), q(3, 4)));

  const auto c = S::open_interval(q(1, 3), q(2, 3)).complement();
  CHECK(c == S::closed_interval(q(0), q(1, 3)).unite(S::closed_interval(q(2, 3), q(1))));
  CHECK(c.components().size() == 2);

  // Touching half-open pieces merge; a gap of one point does not.
  CHECK(S::from_pieces({}, {{q(0), q(1, 2), true, false}, {q(1, 2), q(1), true, true}}) == S::whole());
  CHECK(S::from_pieces({}, {{q(0), q(1, 2), true, false}, {q(1, 2), q(1), false, true}}).components().size() == 2);
  CHECK(S::from_pieces({}, {{q(1, 2), q(1, 2), false, false}}).empty());
}

TEST_CASE("points and intervals") {
  const auto s = S::from_pieces({q(1, 8), q(7, 8)}, {{q(1, 4), q(1, 2), false, true}});
  CHECK(s.points() == std::vector<Rational>{q(1, 8), q(7, 8)});
  REQUIRE(s.intervals().size() == 1);
  CHECK(s.intervals()[0] == Interval{q(1, 4), q(1, 2), false, true});
  CHECK(s.contains(q(1, 2)));
  CHECK_FALSE(s.contains(q(1, 4)));
  CHECK(s.is_subset_of(S::closed_interval(q(1, 8), q(7, 8))));
  CHECK_FALSE(s.is_subset_of(S::open_interval(q(1, 8), q(7, 8))));
}

TEST_CASE("relative topology") {
  CHECK(S::interval(q(0), q(1, 2), true, false).interior() == S::interval(q(0), q(1, 2), true, false));
  CHECK(S::interval(q(1, 2), q(1), false, true).closure() == S::closed_interval(q(1, 2), q(1)));
  CHECK(S::whole().interior() == S::whole());
  CHECK(S::point(q(1, 3)).interior().empty());
  CHECK(S::point(q(0)).closure() == S::point(q(0)));
}

TEST_CASE("nowhere density") {
  CHECK(S::from_pieces({q(1, 4), q(1, 2), q(3, 4)}, {}).is_nowhere_dense());
  CHECK(S::empty_set().is_nowhere_dense());
  CHECK_FALSE(S::open_interval(q(3, 10), q(4, 10)).is_nowhere_dense());
  // Removing a point from an interval keeps it somewhere dense.
  CHECK_FALSE(S::whole().minus(S::point(q(1, 2))).is_nowhere_dense());
  CHECK(S::whole().minus(S::point(q(1, 2))).closure() == S::whole());
}

TEST_CASE("out of range endpoints") {
  try {
    (void)S::point(q(3, 2));
    FAIL("expected OutOfRange");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfRange);
  }
  CHECK_THROWS_AS(S::closed_interval(q(-1, 2), q(1, 2)), Error);
}

TEST_CASE("set operations agree with a grid oracle") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 400; ++trial) {
    const S a = random_grid_set(gen);
    const S b = random_grid_set(gen);
    const auto ma = grid_membership(a);
    const auto mb = grid_membership(b);
    const auto mu = grid_membership(a.unite(b));
    const auto mi = grid_membership(a.intersect(b));
    const auto mm = grid_membership(a.minus(b));
    const auto mc = grid_membership(a.complement());
    const auto mcl = grid_membership(a.closure());
    const auto mint = grid_membership(a.interior());
    for (int k = 0; k <= 16; ++k) {
      CHECK(mu[k] == (ma[k] || mb[k]));
      CHECK(mi[k] == (ma[k] && mb[k]));
      CHECK(mm[k] == (ma[k] && !mb[k]));
      CHECK(mc[k] == !ma[k]);
      if (k % 2 == 1) {
        CHECK(mcl[k] == ma[k]);
        CHECK(mint[k] == ma[k]);
      } else {
        const bool left = k > 0 && ma[k - 1];
        const bool right = k < 16 && ma[k + 1];
        CHECK(mcl[k] == (ma[k] || left || right));
        CHECK(mint[k] == (ma[k] && (k == 0 || left) && (k == 16 || right)));
      }
    }
    CHECK(a.closure().closure() == a.closure());
    CHECK(a.interior().interior() == a.interior());
    CHECK(a.complement().complement() == a);
    CHECK(a.unite(b) == b.unite(a));
    CHECK(a.intersect(b).is_subset_of(a));
    CHECK(a.is_subset_of(a.unite(b)));
    CHECK(a.interior().is_subset_of(a));
    CHECK(a.is_subset_of(a.closure()));
    bool dense_cell = false;
    for (int k = 1; k < 16; k += 2) dense_cell = dense_cell || mcl[k];
    CHECK(a.is_nowhere_dense() == !dense_cell);
    CHECK(a.has_interior() == !a.interior().empty());
  }
}
