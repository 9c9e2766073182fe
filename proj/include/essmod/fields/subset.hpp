#pragma once
// Exact subsets of X = [0, 1]: finite unions of points and intervals with
// rational endpoints. Topological operations (closure, interior) are taken
// relative to [0, 1], so [0, 1/2) is open.

#include <vector>

#include "essmod/fields/rational.hpp"

namespace essmod::fields {

/// A nonempty convex piece; lo == hi denotes the single point (both ends closed).
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  [[nodiscard]] bool is_point() const { return lo == hi; }
  [[nodiscard]] bool contains(const Rational& x) const;
  friend bool operator==(const Interval&, const Interval&) = default;
};

class SymbolicSubset {
 public:
  SymbolicSubset() = default;

  static SymbolicSubset empty_set() { return {}; }
  static SymbolicSubset whole() { return interval(Rational(0), Rational(1), true, true); }
  static SymbolicSubset point(const Rational& x);
  static SymbolicSubset interval(const Rational& lo, const Rational& hi, bool lo_closed, bool hi_closed);
  static SymbolicSubset open_interval(const Rational& lo, const Rational& hi) {
    return interval(lo, hi, false, false);
  }
  static SymbolicSubset closed_interval(const Rational& lo, const Rational& hi) {
    return interval(lo, hi, true, true);
  }
  /// Normalizes raw pieces: drops empty ones, merges overlapping or touching
  /// ones, absorbs points. Throws OutOfRange for endpoints outside [0, 1].
  static SymbolicSubset from_pieces(const std::vector<Rational>& points, std::vector<Interval> intervals);

  /// Normalized components: disjoint, sorted, not mergeable.
  [[nodiscard]] const std::vector<Interval>& components() const noexcept { return parts_; }
  [[nodiscard]] std::vector<Rational> points() const;
  [[nodiscard]] std::vector<Interval> intervals() const;
  [[nodiscard]] bool empty() const noexcept { return parts_.empty(); }
  [[nodiscard]] bool contains(const Rational& x) const;
  [[nodiscard]] bool is_subset_of(const SymbolicSubset& other) const;

  [[nodiscard]] SymbolicSubset unite(const SymbolicSubset& other) const;
  [[nodiscard]] SymbolicSubset intersect(const SymbolicSubset& other) const;
  /// [0, 1] minus this set.
  [[nodiscard]] SymbolicSubset complement() const;
  [[nodiscard]] SymbolicSubset minus(const SymbolicSubset& other) const;
  [[nodiscard]] SymbolicSubset closure() const;
  [[nodiscard]] SymbolicSubset interior() const;

  /// Some component has positive length.
  [[nodiscard]] bool has_interior() const;
  /// interior(closure(S)) is empty.
  [[nodiscard]] bool is_nowhere_dense() const;

  friend bool operator==(const SymbolicSubset&, const SymbolicSubset&) = default;

 private:
  explicit SymbolicSubset(std::vector<Interval> normalized) : parts_(std::move(normalized)) {}
  static SymbolicSubset normalize(std::vector<Interval> raw);

  std::vector<Interval> parts_;
};

std::string to_string(const SymbolicSubset& s);

}  // namespace essmod::fields
