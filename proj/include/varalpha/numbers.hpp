#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "varalpha/errors.hpp"
#include "varalpha/exact_series.hpp"
#include "varalpha/interval.hpp"
#include "varalpha/rational.hpp"
#include "varalpha/systems.hpp"

namespace varalpha {

enum class TailKind { zeros, max_digits, cycle };

/// Digits i_1, i_2, ...: a finite prefix followed by a tail that is all
/// zeros, all maximal digits, or a repeating cycle.
class DigitStream {
public:
  static DigitStream zeros(std::vector<Digit> prefix = {}) { return {std::move(prefix), TailKind::zeros, {}}; }
  static DigitStream max_digits(std::vector<Digit> prefix = {}) {
    return {std::move(prefix), TailKind::max_digits, {}};
  }
  static DigitStream cycle(std::vector<Digit> prefix, std::vector<Digit> cycle) {
    if (cycle.empty()) throw alignment_error("cycle tail must be nonempty");
    return {std::move(prefix), TailKind::cycle, std::move(cycle)};
  }

  const std::vector<Digit>& prefix() const noexcept { return prefix_; }
  TailKind tail_kind() const noexcept { return tail_; }
  const std::vector<Digit>& cycle() const noexcept { return cycle_; }

  friend bool operator==(const DigitStream&, const DigitStream&) = default;

private:
  DigitStream(std::vector<Digit> prefix, TailKind tail, std::vector<Digit> cycle)
      : prefix_(std::move(prefix)), tail_(tail), cycle_(std::move(cycle)) {}

  std::vector<Digit> prefix_;
  TailKind tail_;
  std::vector<Digit> cycle_;
};

/// A digit stream read in a numeral system: the object x = Delta_{i_1 i_2 ...}.
///
/// Construction validates the system, the digit ranges and cycle alignment,
/// then stores the stream in normal form (shortest aligned cycle, shortest
/// prefix, all-zero or all-maximal cycles folded into Zeros / MaxDigits).
/// Equal numbers in the same representation compare equal.
///
/// A Cycle tail is aligned when it starts right after position p with
/// p >= S.prefix_length(), p - S.prefix_length() a multiple of S.period(),
/// and its length is a multiple of S.period().
class RepresentedNumber {
public:
  RepresentedNumber(NumeralSystem system, DigitStream digits) : system_(std::move(system)), digits_(std::move(digits)) {
    require_valid(system_);
    normalize();
  }

  const NumeralSystem& system() const noexcept { return system_; }
  const DigitStream& digits() const noexcept { return digits_; }

  Digit digit_at(std::size_t n) const {
    if (n == 0) throw domain_error("digit positions start at 1");
    const auto& pre = digits_.prefix();
    if (n <= pre.size()) return pre[n - 1];
    switch (digits_.tail_kind()) {
      case TailKind::zeros: return 0;
      case TailKind::max_digits: return system_.max_digit(n);
      case TailKind::cycle: break;
    }
    return digits_.cycle()[(n - pre.size() - 1) % digits_.cycle().size()];
  }

  /// The stream as an aligned prefix plus an aligned cycle, whatever its tail kind.
  const std::vector<Digit>& aligned_prefix() const noexcept { return aligned_prefix_; }
  const std::vector<Digit>& aligned_cycle() const noexcept { return aligned_cycle_; }

  friend bool operator==(const RepresentedNumber& a, const RepresentedNumber& b) {
    return a.system_ == b.system_ && a.digits_ == b.digits_;
  }

private:
  std::size_t aligned_length(std::size_t at_least) const {
    const std::size_t sp = system_.prefix_length(), per = system_.period();
    if (at_least <= sp) return sp;
    return sp + (at_least - sp + per - 1) / per * per;
  }

  void check_range(std::size_t n, Digit d) const {
    if (!system_.in_alphabet(n, d))
      throw digit_range_error("digit " + std::to_string(d) + " at position " + std::to_string(n) +
                              " outside alphabet {0.." + std::to_string(system_.max_digit(n)) + "}");
  }

  void normalize() {
    const std::size_t sp = system_.prefix_length(), per = system_.period();
    std::vector<Digit> pre = digits_.prefix();
    for (std::size_t n = 1; n <= pre.size(); ++n) check_range(n, pre[n - 1]);

    std::vector<Digit> cyc;
    if (digits_.tail_kind() == TailKind::cycle) {
      cyc = digits_.cycle();
      if (cyc.size() % per != 0)
        throw alignment_error("cycle length " + std::to_string(cyc.size()) + " is not a multiple of the system period " +
                              std::to_string(per));
      if (pre.size() < sp || (pre.size() - sp) % per != 0)
        throw alignment_error("cycle starting at position " + std::to_string(pre.size() + 1) +
                              " is not aligned with the system cycle (prefix " + std::to_string(sp) + ", period " +
                              std::to_string(per) + ")");
      for (std::size_t j = 0; j < cyc.size(); ++j) check_range(pre.size() + 1 + j, cyc[j]);
    } else {
      const bool zeros = digits_.tail_kind() == TailKind::zeros;
      auto tail_digit = [&](std::size_t n) { return zeros ? 0 : system_.max_digit(n); };
      const std::size_t p = aligned_length(pre.size());
      for (std::size_t n = pre.size() + 1; n <= p; ++n) pre.push_back(tail_digit(n));
      for (std::size_t n = p + 1; n <= p + per; ++n) cyc.push_back(tail_digit(n));
    }

    // Shortest cycle that is still a multiple of the system period.
    for (std::size_t len = per; len < cyc.size(); len += per) {
      if (cyc.size() % len != 0) continue;
      bool periodic = true;
      for (std::size_t i = len; i < cyc.size() && periodic; ++i) periodic = cyc[i] == cyc[i - len];
      if (periodic) {
        cyc.resize(len);
        break;
      }
    }
    // Pull whole periods of the prefix into the cycle while they match.
    while (pre.size() >= sp + per && std::equal(pre.end() - per, pre.end(), cyc.end() - per)) {
      std::rotate(cyc.begin(), cyc.end() - per, cyc.end());
      pre.resize(pre.size() - per);
    }
    aligned_prefix_ = pre;
    aligned_cycle_ = cyc;

    const std::size_t p = pre.size();
    bool all_zero = std::all_of(cyc.begin(), cyc.end(), [](Digit d) { return d == 0; });
    bool all_max = true;
    for (std::size_t j = 0; j < cyc.size() && all_max; ++j) all_max = cyc[j] == system_.max_digit(p + 1 + j);
    if (all_zero) {
      while (!pre.empty() && pre.back() == 0) pre.pop_back();
      digits_ = DigitStream::zeros(std::move(pre));
    } else if (all_max) {
      while (!pre.empty() && pre.back() == system_.max_digit(pre.size())) pre.pop_back();
      digits_ = DigitStream::max_digits(std::move(pre));
    } else {
      digits_ = DigitStream::cycle(std::move(pre), std::move(cyc));
    }
  }

  NumeralSystem system_;
  DigitStream digits_;
  std::vector<Digit> aligned_prefix_;
  std::vector<Digit> aligned_cycle_;
};

inline Digit digit_at(const RepresentedNumber& num, std::size_t n) { return num.digit_at(n); }

/// Builds the represented number whose n-th digit is digit(n), given that
/// digit(k + period) == digit(k) for every k >= periodic_from.
inline RepresentedNumber from_digit_function(const NumeralSystem& system, const std::function<Digit(std::size_t)>& digit,
                                             std::size_t periodic_from, std::size_t period) {
  const std::size_t sp = system.prefix_length(), per = system.period();
  std::size_t p = std::max(periodic_from > 0 ? periodic_from - 1 : 0, sp);
  p = sp + (p - sp + per - 1) / per * per;
  const std::size_t len = std::lcm(std::max<std::size_t>(period, 1), per);
  std::vector<Digit> pre, cyc;
  for (std::size_t n = 1; n <= p; ++n) pre.push_back(digit(n));
  for (std::size_t n = p + 1; n <= p + len; ++n) cyc.push_back(digit(n));
  return {system, DigitStream::cycle(std::move(pre), std::move(cyc))};
}

/// Signed contribution sign(n) * offset(n, d), before scaling by earlier weights.
inline Rational signed_offset(const NumeralSystem& s, std::size_t n, Digit d) {
  Rational v = s.offset(n, d);
  return s.sign_factor(n) < 0 ? -v : v;
}

/// Value and cumulative weight of a finite digit prefix.
struct PrefixValue {
  Rational value;
  Rational weight{1};
};

inline PrefixValue prefix_value(const NumeralSystem& s, std::span<const Digit> digits, std::size_t first_position = 1) {
  PrefixValue pv;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    const std::size_t n = first_position + k;
    pv.value += signed_offset(s, n, digits[k]) * pv.weight;
    pv.weight *= s.weight(n, digits[k]);
  }
  return pv;
}

/// Exact value of the represented number.
inline Rational eval(const RepresentedNumber& num) {
  const NumeralSystem& s = num.system();
  const auto& pre = num.aligned_prefix();
  const auto& cyc = num.aligned_cycle();
  PrefixValue head = prefix_value(s, pre);
  if (num.digits().tail_kind() == TailKind::zeros) return head.value;

  const std::size_t start = pre.size() + 1;
  Rational ratio(1);
  for (std::size_t j = 0; j < cyc.size(); ++j) ratio *= s.weight(start + j, cyc[j]);
  std::vector<Rational> block_weights(cyc.size());
  Rational w(1);
  for (std::size_t j = 0; j < cyc.size(); ++j) {
    block_weights[j] = w;
    w *= s.weight(start + j, cyc[j]);
  }
  auto term = [&](std::size_t n) {
    std::size_t j = n - start;
    return signed_offset(s, n, cyc[j]) * block_weights[j];
  };
  return head.value + head.weight * periodic_tail_sum(term, start, cyc.size(), ratio);
}

namespace detail {

/// Chooses digits by nesting cylinders. At each position the candidate
/// cylinders are half-open [lo, hi) on the left, so a boundary point goes to
/// the cylinder lying to its right; the supremum of the range is the one
/// exception and goes to the cylinder ending there.
class CylinderWalker {
public:
  explicit CylinderWalker(const NumeralSystem& s) : system_(s), extremes_(s) {}

  const TailExtremes& extremes() const noexcept { return extremes_; }

  /// Digit at position n for residual r (r in the range of positions >= n);
  /// updates r to the residual for positions >= n + 1.
  Digit step(std::size_t n, Rational& r) const {
    const Interval rest = extremes_.at(n + 1);
    const Interval whole = extremes_.at(n);
    std::optional<Digit> pick;
    Rational pick_lo;
    for (Digit d = 0; d <= system_.max_digit(n); ++d) {
      const Rational so = signed_offset(system_, n, d);
      const Rational w = system_.weight(n, d);
      const Rational lo = so + w * rest.lo, hi = so + w * rest.hi;
      const bool inside = lo <= r && (r < hi || (r == hi && r == whole.hi));
      if (inside && (!pick || lo >= pick_lo)) {
        pick = d;
        pick_lo = lo;
      }
    }
    if (!pick)
      throw range_error("value " + r.str() + " lies in no digit cylinder at position " + std::to_string(n));
    r = (r - signed_offset(system_, n, *pick)) / system_.weight(n, *pick);
    return *pick;
  }

private:
  const NumeralSystem& system_;
  TailExtremes extremes_;
};

} // namespace detail

/// First `count` digits of the canonical representation of value.
inline std::vector<Digit> leading_digits(const NumeralSystem& s, const Rational& value, std::size_t count) {
  detail::CylinderWalker walker(s);
  if (!walker.extremes().at(1).contains(value))
    throw range_error("value " + value.str() + " outside the base interval");
  std::vector<Digit> out;
  Rational r = value;
  for (std::size_t n = 1; n <= count; ++n) out.push_back(walker.step(n, r));
  return out;
}

/// Canonical representation of value, found by nesting cylinders for at most
/// `depth` digits and closing the stream as soon as the residual repeats at an
/// aligned position.
inline RepresentedNumber decode(const NumeralSystem& s, const Rational& value, std::size_t depth) {
  require_valid(s);
  detail::CylinderWalker walker(s);
  if (!walker.extremes().at(1).contains(value))
  {
    std::ostringstream os;
    os << "value " << value << " outside the base interval " << walker.extremes().at(1);
    throw range_error(os.str());
  }
  const std::size_t sp = s.prefix_length(), per = s.period();
  std::map<Rational, std::size_t> seen;
  std::vector<Digit> digits;
  Rational r = value;
  for (std::size_t n = 0;; ++n) {
    if (n >= sp && (n - sp) % per == 0) {
      auto [it, fresh] = seen.emplace(r, n);
      if (!fresh) {
        std::vector<Digit> pre(digits.begin(), digits.begin() + static_cast<std::ptrdiff_t>(it->second));
        std::vector<Digit> cyc(digits.begin() + static_cast<std::ptrdiff_t>(it->second), digits.end());
        return {s, DigitStream::cycle(std::move(pre), std::move(cyc))};
      }
    }
    if (n == depth)
      throw inexact_decode_error("no periodic tail found within " + std::to_string(depth) + " digits for " + value.str());
    digits.push_back(walker.step(n + 1, r));
  }
}

/// Exact [min, max] over all numbers whose first digits are prefix_digits.
inline Interval cylinder(const NumeralSystem& s, std::span<const Digit> prefix_digits) {
  PrefixValue pv = prefix_value(s, prefix_digits);
  Interval rest = TailExtremes(s).at(prefix_digits.size() + 1);
  return {pv.value + pv.weight * rest.lo, pv.value + pv.weight * rest.hi};
}

/// The four sign cases for the pair of positions (n, n + 1).
enum class SignCase { both_members, member_then_non, non_then_member, neither };

inline SignCase sign_case(const NumeralSystem& s, std::size_t n) {
  const bool a = s.is_member(n), b = s.is_member(n + 1);
  if (a && b) return SignCase::both_members;
  if (a) return SignCase::member_then_non;
  if (b) return SignCase::non_then_member;
  return SignCase::neither;
}

inline const char* to_string(SignCase c) {
  switch (c) {
    case SignCase::both_members: return "n,n+1 in N_B";
    case SignCase::member_then_non: return "n in N_B, n+1 not";
    case SignCase::non_then_member: return "n not, n+1 in N_B";
    case SignCase::neither: return "n,n+1 not in N_B";
  }
  return "?";
}

/// A number with two digit representations: one ends in the beta tail after
/// position n, the other in the gamma tail, with digit n moved by one.
struct QuasiRationalPoint {
  std::size_t position;
  SignCase row;
  bool beta_side;
  RepresentedNumber partner;
};

inline std::optional<QuasiRationalPoint> quasi_rational_point(const RepresentedNumber& num) {
  const NumeralSystem& s = num.system();
  const std::size_t end = num.aligned_prefix().size() + num.aligned_cycle().size();
  const std::size_t p = num.aligned_prefix().size();

  for (bool beta : {true, false}) {
    auto pattern = [&](std::size_t k) { return beta ? beta_digit(s, k) : gamma_digit(s, k); };
    std::size_t n = 0;
    for (std::size_t k = end; k >= 1; --k) {
      if (num.digit_at(k) != pattern(k)) {
        n = k;
        break;
      }
    }
    if (n == 0 || n > p) continue; // entire stream is the extremal tail, or tail never matches
    const Digit d = num.digit_at(n);
    const bool member = s.is_member(n);
    const Digit partner_digit = (beta == member) ? d + 1 : d - 1;
    if (!s.in_alphabet(n, partner_digit)) continue;
    auto other = [&](std::size_t k) { return beta ? gamma_digit(s, k) : beta_digit(s, k); };
    auto digit = [&](std::size_t k) -> Digit {
      if (k < n) return num.digit_at(k);
      if (k == n) return partner_digit;
      return other(k);
    };
    RepresentedNumber partner = from_digit_function(s, digit, std::max(n + 1, s.prefix_length() + 1), s.period());
    // The beta/gamma duality is exact for Cantor systems and unsigned Q-tilde
    // systems; signed Q-tilde cylinders can overlap or leave gaps, so there
    // the pair only counts when the values actually coincide.
    if (s.is_qtilde() && !s.is_positive() && eval(partner) != eval(num)) return std::nullopt;
    return QuasiRationalPoint{n, sign_case(s, n), beta, std::move(partner)};
  }
  return std::nullopt;
}

inline std::optional<RepresentedNumber> quasi_partner(const RepresentedNumber& num) {
  if (auto q = quasi_rational_point(num)) return std::move(q->partner);
  return std::nullopt;
}

inline bool is_quasi_rational(const RepresentedNumber& num) { return quasi_rational_point(num).has_value(); }

/// The representation decode(system, eval(num)) produces.
inline RepresentedNumber canonicalize(const RepresentedNumber& num) {
  const std::size_t per = num.system().period();
  const std::size_t depth = num.aligned_prefix().size() + 2 * num.aligned_cycle().size() + 2 * per + 4;
  return decode(num.system(), eval(num), depth);
}

} // namespace varalpha
