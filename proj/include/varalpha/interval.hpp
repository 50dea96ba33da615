#pragma once

#include <ostream>

#include "varalpha/rational.hpp"

namespace varalpha {

/// Closed interval [lo, hi] with exact endpoints.
struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Interval& i) {
    return os << '[' << i.lo << ", " << i.hi << ']';
  }
};

/// x -> slope * x + intercept.
struct AffineMap {
  Rational slope;
  Rational intercept;

  Rational apply(const Rational& x) const { return slope * x + intercept; }

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

} // namespace varalpha
