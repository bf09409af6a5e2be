#pragma once

#include <vector>

#include "certigate/rational.hpp"

namespace certigate {

// Closed rational interval [lo, hi], lo <= hi.
struct Interval {
  Rational lo;
  Rational hi;

  // Validating constructor path; throws InvalidInterval when lo > hi.
  static Interval make(Rational lo, Rational hi);
  static Interval point(const Rational& v) { return Interval{v, v}; }

  bool contains(const Rational& v) const { return lo <= v && v <= hi; }
  Rational width() const { return hi - lo; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
  bool subset_of(const Interval& outer) const { return outer.lo <= lo && hi <= outer.hi; }

  friend bool operator==(const Interval& a, const Interval& b) {
    return a.lo == b.lo && a.hi == b.hi;
  }
};

// Nested bound history indexed by stage n >= 0.
using IntervalSequence = std::vector<Interval>;

// Prefix max of lower ends, prefix min of upper ends. Throws
// InconsistentHistory when the running intersection becomes empty (the
// message names the offending stage).
IntervalSequence monotonize(const std::vector<Interval>& raw);

// One monotonization step: intersection-style tightening of `raw` against the
// previous monotonized stage. Same error behavior as monotonize().
Interval tighten(const Interval& prev, const Interval& raw, int stage);

}  // namespace certigate
