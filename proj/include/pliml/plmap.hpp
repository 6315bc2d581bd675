#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "pliml/rational.hpp"

namespace pliml {

struct Point {
  Rational x;
  Rational y;

  friend bool operator==(const Point&, const Point&) = default;
};

/// Closed interval [lo, hi] with lo <= hi.
struct Interval {
  Rational lo;
  Rational hi;

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
  Rational length() const { return hi - lo; }
  bool is_unit() const { return lo == Rational(0) && hi == Rational(1); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class Direction { increasing, decreasing };

/// Maximal interval on which the map is strictly monotone.
struct Lap {
  Rational left;
  Rational right;
  Direction direction;

  bool contains(const Rational& v) const { return left <= v && v <= right; }
  friend bool operator==(const Lap&, const Lap&) = default;
};

/// Guards against the exponential breakpoint growth of iterates.
struct Limits {
  std::size_t breakpoint_budget = 1'000'000;
};

/// Continuous piecewise-linear self-map of [0,1], stored as its breakpoint
/// list. Instances are always normalized: x runs from 0 to 1 strictly
/// increasing, every interior breakpoint is a genuine slope change, every y is
/// in [0,1] and no segment is constant. Two maps are equal iff their
/// breakpoint lists are equal.
class PLMap {
public:
  /// The identity map.
  PLMap();

  /// Validates and normalizes. Collinear interior points are merged.
  static PLMap make(std::vector<Point> points);
  static PLMap identity();

  const std::vector<Point>& breakpoints() const { return points_; }
  std::size_t size() const { return points_.size(); }
  std::size_t segment_count() const { return points_.size() - 1; }

  /// Exact value at x in [0,1].
  Rational eval(const Rational& x) const;
  Rational operator()(const Rational& x) const { return eval(x); }

  /// Index i of the segment [x_i, x_{i+1}] holding x (the right one at a
  /// breakpoint, the last one at 1).
  std::size_t segment_of(const Rational& x) const;

  friend bool operator==(const PLMap&, const PLMap&) = default;

private:
  friend PLMap compose(const PLMap&, const PLMap&, const Limits&);
  friend PLMap from_trusted_points(std::vector<Point>);
  explicit PLMap(std::vector<Point> normalized) : points_(std::move(normalized)) {}

  std::vector<Point> points_;
};

/// Builds a map from points already known to be ordered, in range and free of
/// constant segments; only the collinear merge is applied.
PLMap from_trusted_points(std::vector<Point> points);

PLMap make_plmap(std::vector<Point> points);

/// outer ∘ inner, exact.
PLMap compose(const PLMap& outer, const PLMap& inner, const Limits& limits = {});

/// n-fold composition, n >= 1.
PLMap iterate(const PLMap& f, unsigned n, const Limits& limits = {});

std::vector<Lap> laps(const PLMap& f);

/// Points where the direction of monotonicity changes; with
/// `include_endpoints` the list is framed by 0 and 1.
std::vector<Rational> critical_set(const PLMap& f, bool include_endpoints = false);

/// All solutions of f(x) = c, sorted.
std::vector<Rational> level_crossings(const PLMap& f, const Rational& c);

bool is_onto(const PLMap& f);

/// f(J) for a closed subinterval J of [0,1].
Interval image(const PLMap& f, const Interval& j);

/// True when f is strictly monotone on [lo, hi] (no critical point strictly inside).
bool is_injective_on(const PLMap& f, const Rational& lo, const Rational& hi);

/// Text interchange format: one `x y` breakpoint per line, `#` comments.
PLMap parse_map(std::string_view text);
std::string to_text(const PLMap& f);

}  // namespace pliml
