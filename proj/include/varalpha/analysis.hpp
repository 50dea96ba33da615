#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "varalpha/errors.hpp"
#include "varalpha/interval.hpp"
#include "varalpha/numbers.hpp"
#include "varalpha/operators.hpp"
#include "varalpha/rational.hpp"
#include "varalpha/systems.hpp"

namespace varalpha {

/// sigma_m on the rank-m cylinder Delta_{c_1...c_m}; m is prefix_digits.size().
inline AffineMap affine_on_cylinder(const NumeralSystem& s, std::span<const Digit> prefix_digits,
                                    ShiftVariant variant = ShiftVariant::digit_signed) {
  return closed_form_map(s, prefix_digits, variant);
}

struct Segment {
  std::vector<Digit> digits;
  Interval interval;
  AffineMap map;
};

/// One entry per rank-m cylinder, sorted by left endpoint. Signed positions
/// reverse digit order within a rank, so spatial order is not digit order.
inline std::vector<Segment> segment_table(const NumeralSystem& s, std::size_t m,
                                          ShiftVariant variant = ShiftVariant::digit_signed) {
  if (m == 0) throw domain_error("segment table needs m >= 1");
  require_admissible(s, variant);
  const TailExtremes extremes(s);
  const Interval rest = extremes.at(m + 1);
  std::vector<Segment> out;
  std::vector<Digit> digits(m, 0);
  for (;;) {
    PrefixValue pv = prefix_value(s, digits);
    out.push_back({digits, {pv.value + pv.weight * rest.lo, pv.value + pv.weight * rest.hi},
                   closed_form_map(s, digits, variant)});
    // odometer over the product of alphabets
    std::size_t k = m;
    while (k > 0 && digits[k - 1] == s.max_digit(k)) digits[--k] = 0;
    if (k == 0) break;
    ++digits[k - 1];
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Segment& a, const Segment& b) { return a.interval.lo < b.interval.lo; });
  return out;
}

/// sigma_m as a point function: the canonical rank-m cylinder of x selects
/// the affine piece.
inline Rational sigma_at(const NumeralSystem& s, std::size_t m, const Rational& x,
                         ShiftVariant variant = ShiftVariant::digit_signed) {
  auto digits = leading_digits(s, x, m);
  return closed_form_map(s, digits, variant).apply(x);
}

enum class ContinuityKind { continuous, jump };

struct ContinuityReport {
  ContinuityKind kind;
  Rational left_limit;
  Rational right_limit;
  Rational jump; // right - left
};

/// Continuity of sigma_m at eval(num). At a quasi-rational point the beta-side
/// representation is the infimum of its rank-n cylinder, so it carries the
/// right-hand limit and the gamma-side representation the left-hand one.
inline ContinuityReport continuity_at(const NumeralSystem& s, std::size_t m, const RepresentedNumber& num,
                                      ShiftVariant variant = ShiftVariant::digit_signed) {
  if (!(num.system() == s)) throw domain_error("number is not represented in the given system");
  auto point = quasi_rational_point(num);
  if (!point) {
    Rational v = eval(generalized_shift(num, m, variant));
    return {ContinuityKind::continuous, v, v, Rational(0)};
  }
  const RepresentedNumber& beta = point->beta_side ? num : point->partner;
  const RepresentedNumber& gamma = point->beta_side ? point->partner : num;
  Rational right = eval(generalized_shift(beta, m, variant));
  Rational left = eval(generalized_shift(gamma, m, variant));
  Rational jump = right - left;
  return {jump.is_zero() ? ContinuityKind::continuous : ContinuityKind::jump, left, right, jump};
}

/// Central difference quotient of sigma_m at eval(num); x - step and x + step
/// must stay in the rank-m cylinder of x.
inline Rational numeric_derivative(const NumeralSystem& s, std::size_t m, const RepresentedNumber& num,
                                   const Rational& step, ShiftVariant variant = ShiftVariant::digit_signed) {
  if (step.sign() <= 0) throw domain_error("derivative step must be positive");
  const Rational x = eval(num);
  std::vector<Digit> digits;
  for (std::size_t n = 1; n <= m; ++n) digits.push_back(num.digit_at(n));
  const Interval base = TailExtremes(s).at(1);
  const Rational lo = x - step, hi = x + step;
  if (!base.contains(lo) || !base.contains(hi) || leading_digits(s, lo, m) != digits ||
      leading_digits(s, hi, m) != digits)
    throw domain_error("step " + step.str() + " leaves the rank-" + std::to_string(m) + " cylinder of " + x.str());
  return (sigma_at(s, m, hi, variant) - sigma_at(s, m, lo, variant)) / (Rational(2) * step);
}

/// samples_per_cylinder equally spaced interior points of every rank-m
/// cylinder with their images, in increasing x.
inline std::vector<std::pair<Rational, Rational>> graph_samples(const NumeralSystem& s, std::size_t m,
                                                                std::size_t samples_per_cylinder,
                                                                ShiftVariant variant = ShiftVariant::digit_signed) {
  if (samples_per_cylinder < 2) throw domain_error("graph needs at least 2 samples per cylinder");
  std::vector<std::pair<Rational, Rational>> out;
  const Rational parts(static_cast<long>(samples_per_cylinder + 1));
  for (const auto& seg : segment_table(s, m, variant)) {
    for (std::size_t j = 1; j <= samples_per_cylinder; ++j) {
      Rational x = seg.interval.lo + seg.interval.width() * Rational(static_cast<long>(j)) / parts;
      out.emplace_back(x, seg.map.apply(x));
    }
  }
  return out;
}

} // namespace varalpha
