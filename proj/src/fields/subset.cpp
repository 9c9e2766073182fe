#include "essmod/fields/subset.hpp"

#include <algorithm>

#include "essmod/error.hpp"

namespace essmod::fields {

bool Interval::contains(const Rational& x) const {
  const bool above = lo_closed ? x >= lo : x > lo;
  const bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

namespace {

bool is_empty_piece(const Interval& iv) {
  if (iv.lo > iv.hi) return true;
  return iv.lo == iv.hi && !(iv.lo_closed && iv.hi_closed);
}

}  // namespace

SymbolicSubset SymbolicSubset::normalize(std::vector<Interval> raw) {
  std::erase_if(raw, is_empty_piece);
  std::sort(raw.begin(), raw.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return a.lo_closed && !b.lo_closed;
  });
  std::vector<Interval> out;
  for (auto& iv : raw) {
    if (!out.empty()) {
      Interval& cur = out.back();
      const bool overlaps = iv.lo < cur.hi || (iv.lo == cur.hi && (cur.hi_closed || iv.lo_closed));
      if (overlaps) {
        if (iv.lo == cur.lo) cur.lo_closed = cur.lo_closed || iv.lo_closed;
        if (iv.hi > cur.hi) {
          cur.hi = iv.hi;
          cur.hi_closed = iv.hi_closed;
        } else if (iv.hi == cur.hi) {
          cur.hi_closed = cur.hi_closed || iv.hi_closed;
        }
        continue;
      }
    }
    out.push_back(std::move(iv));
  }
  return SymbolicSubset(std::move(out));
}

SymbolicSubset SymbolicSubset::point(const Rational& x) { return from_pieces({x}, {}); }

SymbolicSubset SymbolicSubset::interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed) {
  return from_pieces({}, {Interval{lo, hi, lo_closed, hi_closed}});
}

SymbolicSubset SymbolicSubset::from_pieces(const std::vector<Rational>& points, std::vector<Interval> intervals) {
  auto in_range = [](const Rational& x) { return sgn(x) >= 0 && x <= 1; };
  for (const auto& p : points) {
    if (!in_range(p)) throw Error(ErrorCode::OutOfRange, "point " + to_string(p) + " outside [0,1]");
    intervals.push_back(Interval{p, p, true, true});
  }
  for (const auto& iv : intervals) {
    if (!in_range(iv.lo) || !in_range(iv.hi)) {
      throw Error(ErrorCode::OutOfRange, "interval endpoint outside [0,1]");
    }
  }
  return normalize(std::move(intervals));
}

std::vector<Rational> SymbolicSubset::points() const {
  std::vector<Rational> out;
  for (const auto& p : parts_) {
    if (p.is_point()) out.push_back(p.lo);
  }
  return out;
}

std::vector<Interval> SymbolicSubset::intervals() const {
  std::vector<Interval> out;
  for (const auto& p : parts_) {
    if (!p.is_point()) out.push_back(p);
  }
  return out;
}

bool SymbolicSubset::contains(const Rational& x) const {
  return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& iv) { return iv.contains(x); });
}

bool SymbolicSubset::is_subset_of(const SymbolicSubset& other) const { return minus(other).empty(); }

SymbolicSubset SymbolicSubset::unite(const SymbolicSubset& other) const {
  std::vector<Interval> all = parts_;
  all.insert(all.end(), other.parts_.begin(), other.parts_.end());
  return normalize(std::move(all));
}

SymbolicSubset SymbolicSubset::intersect(const SymbolicSubset& other) const {
  std::vector<Interval> out;
  for (const auto& a : parts_) {
    for (const auto& b : other.parts_) {
      Interval iv;
      if (a.lo > b.lo) {
        iv.lo = a.lo;
        iv.lo_closed = a.lo_closed;
      } else if (b.lo > a.lo) {
        iv.lo = b.lo;
        iv.lo_closed = b.lo_closed;
      } else {
        iv.lo = a.lo;
        iv.lo_closed = a.lo_closed && b.lo_closed;
      }
      if (a.hi < b.hi) {
        iv.hi = a.hi;
        iv.hi_closed = a.hi_closed;
      } else if (b.hi < a.hi) {
        iv.hi = b.hi;
        iv.hi_closed = b.hi_closed;
      } else {
        iv.hi = a.hi;
        iv.hi_closed = a.hi_closed && b.hi_closed;
      }
      out.push_back(std::move(iv));
    }
  }
  return normalize(std::move(out));
}

SymbolicSubset SymbolicSubset::complement() const {
  std::vector<Interval> gaps;
  Rational start(0);
  bool start_closed = true;
  for (const auto& p : parts_) {
    gaps.push_back(Interval{start, p.lo, start_closed, !p.lo_closed});
    start = p.hi;
    start_closed = !p.hi_closed;
  }
  gaps.push_back(Interval{start, Rational(1), start_closed, true});
  return normalize(std::move(gaps));
}

SymbolicSubset SymbolicSubset::minus(const SymbolicSubset& other) const {
  return intersect(other.complement());
}

SymbolicSubset SymbolicSubset::closure() const {
  std::vector<Interval> closed = parts_;
  for (auto& iv : closed) {
    iv.lo_closed = true;
    iv.hi_closed = true;
  }
  return normalize(std::move(closed));
}

SymbolicSubset SymbolicSubset::interior() const {
  std::vector<Interval> open;
  for (const auto& iv : parts_) {
    if (iv.is_point()) continue;
    // 0 and 1 are interior points of [0, 1] relative to itself.
    open.push_back(Interval{iv.lo, iv.hi, iv.lo_closed && sgn(iv.lo) == 0, iv.hi_closed && iv.hi == 1});
  }
  return normalize(std::move(open));
}

bool SymbolicSubset::has_interior() const {
  return std::any_of(parts_.begin(), parts_.end(), [](const Interval& iv) { return !iv.is_point(); });
}

bool SymbolicSubset::is_nowhere_dense() const { return !has_interior(); }

std::string to_string(const SymbolicSubset& s) {
  if (s.empty()) return "{}";
  std::string out;
  for (const auto& iv : s.components()) {
    if (!out.empty()) out += " u ";
    if (iv.is_point()) {
      out += "{" + to_string(iv.lo) + "}";
    } else {
      out += (iv.lo_closed ? "[" : "(") + to_string(iv.lo) + ", " + to_string(iv.hi) + (iv.hi_closed ? "]" : ")");
    }
  }
  return out;
}

}  // namespace essmod::fields
