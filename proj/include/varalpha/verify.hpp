#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "varalpha/analysis.hpp"
#include "varalpha/io.hpp"
#include "varalpha/numbers.hpp"
#include "varalpha/operators.hpp"
#include "varalpha/systems.hpp"

namespace varalpha::verify {

using json = nlohmann::ordered_json;

/// Size limits for generated trials. Zero for max_m means "suite default".
struct Bounds {
  long max_q = 12;
  std::size_t max_prefix = 12;
  std::size_t max_m = 0;
  std::size_t max_cycle = 4;
  long max_column_denominator = 16;
};

struct VerifyConfig {
  std::string suite;
  std::size_t trials = 0; // 0: suite default
  std::uint64_t seed = 0;
  Bounds bounds;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Portable generator: mt19937_64 plus explicit range reduction, so equal
/// seeds give equal streams on every standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do v = engine_();
    while (v >= limit);
    return v % n;
  }
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  std::size_t range(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return below(2) == 1; }

private:
  std::mt19937_64 engine_;
};

/// Each trial gets its own generator, derived from the seed, the suite name
/// and the trial index only.
inline Rng trial_rng(std::uint64_t seed, std::string_view suite, std::size_t trial) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : suite) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  return Rng(splitmix64(splitmix64(seed ^ h) + splitmix64(trial)));
}

// ---------------------------------------------------------------- generators

enum class SignMode { positive, alternating, random };

inline EventuallyPeriodicSeq<Base> random_base(Rng& rng, const Bounds& b, long min_q = 2) {
  const long hi = std::max(b.max_q, min_q);
  std::vector<Base> pre(rng.range(std::size_t{0}, std::size_t{3})), cyc(rng.range(std::size_t{1}, b.max_cycle));
  for (auto& q : pre) q = rng.range(min_q, hi);
  for (auto& q : cyc) q = rng.range(min_q, hi);
  return {std::move(pre), std::move(cyc)};
}

inline SignPattern random_signs(Rng& rng, const Bounds& b) {
  std::vector<bool> pre(rng.range(std::size_t{0}, std::size_t{3})), cyc(rng.range(std::size_t{1}, b.max_cycle));
  for (std::size_t i = 0; i < pre.size(); ++i) pre[i] = rng.coin();
  for (std::size_t i = 0; i < cyc.size(); ++i) cyc[i] = rng.coin();
  return SignPattern(EventuallyPeriodicSeq<bool>(std::move(pre), std::move(cyc)));
}

inline SignPattern signs_for(Rng& rng, const Bounds& b, SignMode mode) {
  switch (mode) {
    case SignMode::positive: return SignPattern::none();
    case SignMode::alternating: return SignPattern::odd();
    case SignMode::random: break;
  }
  return random_signs(rng, b);
}

/// Same pattern with the membership of positions n and n + 1 forced to the
/// given sign case.
inline SignPattern force_case(const SignPattern& signs, std::size_t n, SignCase row) {
  const auto& seq = signs.membership();
  std::vector<bool> head;
  for (std::size_t k = 1; k <= n + 1; ++k) head.push_back(seq.term_at(k));
  head[n - 1] = row == SignCase::both_members || row == SignCase::member_then_non;
  head[n] = row == SignCase::both_members || row == SignCase::non_then_member;
  auto rest = seq.shifted(n + 1);
  head.insert(head.end(), rest.prefix().begin(), rest.prefix().end());
  return SignPattern(EventuallyPeriodicSeq<bool>(std::move(head), rest.cycle()));
}

inline SignCase row_for_trial(std::size_t trial) { return static_cast<SignCase>(trial % 4); }

inline QTildeColumn random_column(Rng& rng, const Bounds& b) {
  const long max_den = std::max(2L, b.max_column_denominator);
  const long den = rng.range(2L, max_den);
  const long parts = rng.range(2L, std::min(4L, den));
  // parts - 1 distinct cut points in 1..den-1
  std::vector<long> cuts;
  while (static_cast<long>(cuts.size()) < parts - 1) {
    long c = rng.range(1L, den - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> entries;
  long prev = 0;
  for (long c : cuts) {
    entries.emplace_back(c - prev, den);
    prev = c;
  }
  entries.emplace_back(den - prev, den);
  return QTildeColumn(std::move(entries));
}

inline NumeralSystem random_cantor(Rng& rng, const Bounds& b, SignMode mode) {
  return NumeralSystem::cantor(random_base(rng, b), signs_for(rng, b, mode));
}

inline NumeralSystem random_qtilde(Rng& rng, const Bounds& b, SignMode mode) {
  std::vector<QTildeColumn> pre, cyc;
  const std::size_t np = rng.range(std::size_t{0}, std::size_t{2});
  const std::size_t nc = rng.range(std::size_t{1}, std::min<std::size_t>(b.max_cycle, 3));
  for (std::size_t i = 0; i < np; ++i) pre.push_back(random_column(rng, b));
  for (std::size_t i = 0; i < nc; ++i) cyc.push_back(random_column(rng, b));
  return NumeralSystem::qtilde(EventuallyPeriodicSeq<QTildeColumn>(std::move(pre), std::move(cyc)),
                               signs_for(rng, b, mode));
}

inline Digit random_digit(Rng& rng, const NumeralSystem& s, std::size_t n) {
  return static_cast<Digit>(rng.below(s.alphabet_size(n)));
}

/// Random digit stream: prefix of at most max_prefix digits (rounded up to
/// alignment for cycle tails) and a zeros, max or cycle tail.
inline RepresentedNumber random_number(Rng& rng, const NumeralSystem& s, std::size_t max_prefix) {
  const std::size_t len = rng.range(std::size_t{0}, max_prefix);
  std::vector<Digit> pre;
  switch (rng.below(3)) {
    case 0:
      for (std::size_t n = 1; n <= len; ++n) pre.push_back(random_digit(rng, s, n));
      return {s, DigitStream::zeros(std::move(pre))};
    case 1:
      for (std::size_t n = 1; n <= len; ++n) pre.push_back(random_digit(rng, s, n));
      return {s, DigitStream::max_digits(std::move(pre))};
    default: break;
  }
  const std::size_t sp = s.prefix_length(), per = s.period();
  const std::size_t p = len <= sp ? sp : sp + (len - sp + per - 1) / per * per;
  const std::size_t reps = per > 6 ? 1 : rng.range(std::size_t{1}, std::size_t{2});
  for (std::size_t n = 1; n <= p; ++n) pre.push_back(random_digit(rng, s, n));
  std::vector<Digit> cyc;
  for (std::size_t n = p + 1; n <= p + reps * per; ++n) cyc.push_back(random_digit(rng, s, n));
  return {s, DigitStream::cycle(std::move(pre), std::move(cyc))};
}

/// A quasi-rational point whose beta-side representation branches at
/// position n (digits after n follow the beta tail).
inline RepresentedNumber quasi_rational_at(Rng& rng, const NumeralSystem& s, std::size_t n) {
  std::vector<Digit> head;
  for (std::size_t k = 1; k < n; ++k) head.push_back(random_digit(rng, s, k));
  // beta_n is excluded so that the branch really sits at n
  const Digit hi = s.max_digit(n);
  head.push_back(s.is_member(n) ? static_cast<Digit>(rng.range(0L, static_cast<long>(hi) - 1))
                                : static_cast<Digit>(rng.range(1L, static_cast<long>(hi))));
  auto digit = [&](std::size_t k) { return k <= n ? head[k - 1] : beta_digit(s, k); };
  return from_digit_function(s, digit, std::max(n + 1, s.prefix_length() + 1), s.period());
}

inline Rational head_product(const NumeralSystem& s, std::size_t upto) {
  Rational p(1);
  for (std::size_t k = 1; k <= upto; ++k) p *= Rational(s.base_at(k));
  return p;
}

// ---------------------------------------------------------------- suites

struct TrialResult {
  bool pass = true;
  json failure;                 // serialized case, filled on failure
  std::size_t size = 0;         // ordering key for "minimal" failing case
  std::vector<std::pair<std::string, bool>> notes;
};

using SuiteFn = std::function<TrialResult(Rng&, const Bounds&, std::size_t trial)>;

struct SuiteInfo {
  std::string description;
  std::size_t default_trials;
  SuiteFn run;
};

namespace detail {

inline std::size_t number_size(const RepresentedNumber& x) {
  return x.aligned_prefix().size() + x.aligned_cycle().size();
}

inline TrialResult outcome(bool pass, const RepresentedNumber& x, std::size_t m, std::string detail,
                           json extra = json::object()) {
  TrialResult r;
  r.pass = pass;
  r.size = number_size(x) + m;
  if (!pass) {
    r.failure = std::move(extra);
    r.failure["number"] = io::emit_number(x);
    r.failure["m"] = m;
    r.failure["detail"] = std::move(detail);
  }
  return r;
}

inline std::size_t pick_m(Rng& rng, const RepresentedNumber& x, const Bounds& b) {
  std::size_t hi = x.digits().prefix().size() + 2;
  if (b.max_m) hi = std::min(hi, b.max_m);
  return rng.range(std::size_t{1}, std::max<std::size_t>(hi, 1));
}

inline TrialResult closed_form_trial(const RepresentedNumber& x, std::size_t m, ShiftVariant v) {
  const Rational surgery = eval(generalized_shift(x, m, v));
  const Rational closed = closed_form_value(x, m, v);
  return outcome(surgery == closed, x, m, "surgery " + surgery.str() + " vs closed form " + closed.str(),
                 {{"variant", to_string(v)}});
}

inline TrialResult eq4(Rng& rng, const Bounds& b, std::size_t) {
  auto x = random_number(rng, random_cantor(rng, b, SignMode::positive), b.max_prefix);
  return closed_form_trial(x, pick_m(rng, x, b), ShiftVariant::digit_signed);
}

inline TrialResult alternating(Rng& rng, const Bounds& b, std::size_t) {
  auto x = random_number(rng, random_cantor(rng, b, SignMode::alternating), b.max_prefix);
  return closed_form_trial(x, pick_m(rng, x, b), ShiftVariant::position_signed);
}

inline TrialResult general_signed(Rng& rng, const Bounds& b, std::size_t trial) {
  auto s = random_cantor(rng, b, SignMode::random);
  const std::size_t m = rng.range(std::size_t{1}, b.max_m ? b.max_m : b.max_prefix + 2);
  s = s.with_signs(force_case(s.signs(), m, row_for_trial(trial)));
  auto x = random_number(rng, s, b.max_prefix);
  return closed_form_trial(x, m, ShiftVariant::digit_signed);
}

inline TrialResult qtilde(Rng& rng, const Bounds& b, std::size_t trial) {
  auto s = random_qtilde(rng, b, SignMode::random);
  const std::size_t m = rng.range(std::size_t{1}, b.max_m ? b.max_m : b.max_prefix + 2);
  s = s.with_signs(force_case(s.signs(), m, row_for_trial(trial)));
  auto x = random_number(rng, s, b.max_prefix);
  return closed_form_trial(x, m, ShiftVariant::digit_signed);
}

inline TrialResult theorem_a(Rng& rng, const Bounds& b, std::size_t) {
  auto x = random_number(rng, random_cantor(rng, b, SignMode::positive), b.max_prefix);
  TheoremParams p;
  p.m = rng.range(std::size_t{1}, b.max_m ? b.max_m : 8);
  p.run_length = 0;
  auto report = verify_theorem_identities(x, p);
  const auto* c = report.find(theorem::shift_of_repeated_sigma2);
  return outcome(c->holds, x, p.m, c->detail);
}

inline TrialResult theorem_b(Rng& rng, const Bounds& b, std::size_t) {
  auto x = random_number(rng, random_cantor(rng, b, SignMode::positive), b.max_prefix);
  const std::size_t kmax = b.max_m ? b.max_m : 12;
  TheoremParams p;
  const std::size_t count = rng.range(std::size_t{1}, std::min<std::size_t>(5, kmax));
  while (p.indices.size() < count) {
    std::size_t k = rng.range(std::size_t{1}, kmax);
    if (std::find(p.indices.begin(), p.indices.end(), k) == p.indices.end()) p.indices.push_back(k);
  }
  std::sort(p.indices.begin(), p.indices.end());
  p.run_start = rng.range(std::size_t{1}, kmax);
  p.run_length = rng.range(std::size_t{1}, kmax - p.run_start + 1);
  auto report = verify_theorem_identities(x, p);
  const auto* removals = report.find(theorem::removals);
  const auto* minus_one = report.find(theorem::run_minus_one);
  const auto* plus_one = report.find(theorem::run_plus_one);
  json extra = {{"indices", p.indices}, {"run_start", p.run_start}, {"run_length", p.run_length}};
  auto r = outcome(removals->holds && minus_one->holds, x, p.indices.back(),
                   removals->detail + "; " + minus_one->detail, extra);
  r.notes.emplace_back("exponent k_1+1 also holds", plus_one->holds);
  return r;
}

inline TrialResult jump_positive(Rng& rng, const Bounds& b, std::size_t trial) {
  auto s = random_cantor(rng, b, SignMode::positive);
  const std::size_t n = rng.range(std::size_t{1}, std::max<std::size_t>(b.max_prefix, 1));
  auto x = quasi_rational_at(rng, s, n);
  if (trial % 2 == 1) x = *quasi_partner(x); // approach from the gamma representation
  auto rep = continuity_at(s, n, x);
  const Rational expected = -head_product(s, n - 1).reciprocal();
  return outcome(rep.kind == ContinuityKind::jump && rep.jump == expected, x, n,
                 "jump " + rep.jump.str() + ", expected " + expected.str());
}

inline TrialResult jump_signed(Rng& rng, const Bounds& b, std::size_t trial) {
  auto s = random_cantor(rng, b, SignMode::random);
  const std::size_t n = rng.range(std::size_t{1}, std::max<std::size_t>(b.max_prefix, 1));
  const SignCase row = row_for_trial(trial);
  s = s.with_signs(force_case(s.signs(), n, row));
  auto x = quasi_rational_at(rng, s, n);
  auto rep = continuity_at(s, n, x);
  const Rational magnitude = head_product(s, n - 1).reciprocal();
  auto r = outcome(rep.kind == ContinuityKind::jump && rep.jump.abs() == magnitude, x, n,
                   "jump " + rep.jump.str() + ", expected magnitude " + magnitude.str(), {{"row", to_string(row)}});
  r.notes.emplace_back(std::string("jump negative, row ") + to_string(row), rep.jump.sign() < 0);
  return r;
}

inline TrialResult continuity(Rng& rng, const Bounds& b, std::size_t trial) {
  auto s = random_cantor(rng, b, SignMode::random);
  const std::size_t n = rng.range(std::size_t{1}, std::max<std::size_t>(b.max_prefix, 1));
  const SignCase row = row_for_trial(trial);
  s = s.with_signs(force_case(s.signs(), n, row));
  auto x = quasi_rational_at(rng, s, n);
  std::size_t m = rng.range(std::size_t{1}, n + 2);
  if (m >= n) ++m; // m != n
  auto rep = continuity_at(s, m, x);
  return outcome(rep.kind == ContinuityKind::continuous, x, m,
                 "images " + rep.left_limit.str() + " / " + rep.right_limit.str(), {{"row", to_string(row)}, {"n", n}});
}

inline TrialResult duality(Rng& rng, const Bounds& b, std::size_t trial) {
  auto s = random_cantor(rng, b, SignMode::random);
  const std::size_t n = rng.range(std::size_t{1}, std::max<std::size_t>(b.max_prefix, 1));
  const SignCase row = row_for_trial(trial);
  s = s.with_signs(force_case(s.signs(), n, row));
  auto x = quasi_rational_at(rng, s, n);
  if ((trial / 4) % 2 == 1) x = *quasi_partner(x);
  auto point = quasi_rational_point(x);
  if (!point) return outcome(false, x, n, "no partner found", {{"row", to_string(row)}});
  auto back = quasi_partner(point->partner);
  const bool ok = point->position == n && point->row == row && eval(point->partner) == eval(x) && back && *back == x;
  return outcome(ok, x, n, "partner value " + eval(point->partner).str() + " vs " + eval(x).str(),
                 {{"row", to_string(row)}});
}

inline TrialResult residual(Rng& rng, const Bounds& b, std::size_t) {
  auto x = random_number(rng, random_cantor(rng, b, SignMode::positive), b.max_prefix);
  TheoremParams p;
  p.m = rng.range(std::size_t{1}, b.max_m ? b.max_m : 10);
  p.run_length = 0;
  auto report = verify_theorem_identities(x, p);
  const auto* c = report.find(theorem::residual);
  return outcome(c->holds, x, p.m, c->detail);
}

/// Systems used for decoding: unsigned Cantor, signed Cantor, unsigned Q-tilde.
inline NumeralSystem decode_flavor(Rng& rng, const Bounds& b, std::size_t trial) {
  switch (trial % 3) {
    case 0: return random_cantor(rng, b, SignMode::positive);
    case 1: return random_cantor(rng, b, SignMode::random);
    default: return random_qtilde(rng, b, SignMode::positive);
  }
}

inline constexpr std::size_t decode_depth = 4000;

inline TrialResult decode_roundtrip(Rng& rng, const Bounds& b, std::size_t trial) {
  auto s = decode_flavor(rng, b, trial);
  const Interval range = base_interval(s);
  Rational v;
  if (s.is_cantor()) {
    if (rng.below(4) == 0) {
      const long den = rng.range(1L, 40L);
      v = range.lo + range.width() * Rational(rng.range(0L, den), den);
    } else {
      const std::size_t k = rng.range(std::size_t{1}, std::size_t{6});
      const Rational qk = head_product(s, k);
      const long steps = qk.numerator().fits_slong_p() ? qk.numerator().get_si() : 1L;
      v = range.lo + Rational(rng.range(0L, steps), steps);
    }
  } else {
    v = eval(random_number(rng, s, b.max_prefix));
  }
  TrialResult r;
  try {
    auto x = decode(s, v, decode_depth);
    r = outcome(eval(x) == v, x, 0, "decoded value " + eval(x).str() + " vs " + v.str());
  } catch (const error& e) {
    r.pass = false;
    r.failure = {{"system", io::emit_system(s)}, {"value", v.str()}, {"detail", e.what()}};
  }
  return r;
}

inline TrialResult canonical(Rng& rng, const Bounds& b, std::size_t trial) {
  auto s = decode_flavor(rng, b, trial);
  auto x = random_number(rng, s, b.max_prefix);
  auto point = quasi_rational_point(x);
  const RepresentedNumber expected = (point && !point->beta_side) ? point->partner : x;
  const auto c = decode(s, eval(x), decode_depth);
  const bool ok = c == canonicalize(x) && c == expected && canonicalize(c) == c &&
                  (!point || canonicalize(point->partner) == c);
  return outcome(ok, x, 0, "canonical " + io::emit_number(c)["digits"].dump());
}

inline TrialResult segments(Rng& rng, const Bounds& b, std::size_t trial) {
  Bounds small = b;
  small.max_q = std::min(b.max_q, 6L);
  small.max_column_denominator = std::min(b.max_column_denominator, 8L);
  const std::size_t m = rng.range(std::size_t{1}, b.max_m ? b.max_m : 4);
  NumeralSystem s = random_cantor(rng, small, SignMode::positive);
  ShiftVariant v = ShiftVariant::digit_signed;
  switch (trial % 4) {
    case 0: break;
    case 1: s = random_cantor(rng, small, SignMode::random); break;
    case 2: s = random_cantor(rng, small, SignMode::alternating); v = ShiftVariant::position_signed; break;
    default: s = random_qtilde(rng, small, SignMode::positive); break;
  }
  const auto table = segment_table(s, m, v);
  const Interval range = base_interval(s);
  std::size_t expected_count = 1;
  for (std::size_t j = 1; j <= m; ++j) expected_count *= s.alphabet_size(j);

  json extra = {{"system", io::emit_system(s)}, {"m", m}, {"variant", to_string(v)}};
  auto fail = [&](const std::string& why) {
    TrialResult r;
    r.pass = false;
    r.size = expected_count;
    r.failure = extra;
    r.failure["detail"] = why;
    return r;
  };
  if (table.size() != expected_count) return fail("segment count " + std::to_string(table.size()));
  if (table.front().interval.lo != range.lo || table.back().interval.hi != range.hi)
    return fail("segments do not span the base interval");
  Rational total;
  for (std::size_t i = 0; i < table.size(); ++i) {
    total += table[i].interval.width();
    if (i + 1 < table.size() && table[i].interval.hi != table[i + 1].interval.lo)
      return fail("gap or overlap after segment " + std::to_string(i));
  }
  if (total != range.width()) return fail("widths sum to " + total.str());

  for (const auto& seg : table) {
    Rational expected_slope;
    if (v == ShiftVariant::position_signed) expected_slope = -Rational(s.base_at(m));
    else if (s.is_cantor()) expected_slope = Rational(s.base_at(m));
    else expected_slope = s.column_at(m).entry(seg.digits.back()).reciprocal();
    if (seg.map.slope != expected_slope) return fail("declared slope " + seg.map.slope.str());

    // three interior points, imaged by digit surgery
    std::vector<std::pair<Rational, Rational>> pts;
    for (long j = 1; j <= 3; ++j) {
      std::optional<RepresentedNumber> x;
      if (s.is_cantor()) {
        x = decode(s, seg.interval.lo + seg.interval.width() * Rational(j, 4L), decode_depth);
      } else {
        // continuations ordered (0,1) < (0,1,1) < (1,1), all strictly interior
        static const std::vector<std::vector<Digit>> tails = {{0, 1}, {0, 1, 1}, {1, 1}};
        std::vector<Digit> digits = seg.digits;
        digits.insert(digits.end(), tails[j - 1].begin(), tails[j - 1].end());
        x = RepresentedNumber(s, DigitStream::zeros(std::move(digits)));
      }
      for (std::size_t k = 1; k <= m; ++k)
        if (x->digit_at(k) != seg.digits[k - 1]) return fail("sample left its cylinder");
      const Rational xv = eval(*x);
      if (!(seg.interval.lo < xv && xv < seg.interval.hi)) return fail("sample " + xv.str() + " not interior");
      const Rational yv = eval(generalized_shift(*x, m, v));
      if (yv != seg.map.apply(xv)) return fail("surgery disagrees with the affine piece at " + xv.str());
      pts.emplace_back(xv, yv);
    }
    if (pts[0].first == pts[1].first || pts[1].first == pts[2].first || pts[0].first == pts[2].first)
      return fail("samples not distinct");
    for (std::size_t i = 1; i < pts.size(); ++i) {
      if ((pts[i].second - pts[0].second) / (pts[i].first - pts[0].first) != expected_slope)
        return fail("samples not collinear with the declared slope");
    }
  }
  TrialResult ok;
  ok.size = expected_count;
  return ok;
}

inline TrialResult constant_alphabet(Rng& rng, const Bounds& b, std::size_t) {
  const Base q = rng.range(2L, b.max_q);
  const SignPattern signs = rng.coin() ? SignPattern::none() : SignPattern::all();
  const auto s = NumeralSystem::cantor(EventuallyPeriodicSeq<Base>::constant(q), signs);
  auto x = random_number(rng, s, b.max_prefix);
  const std::size_t m = pick_m(rng, x, b);
  const auto y = generalized_shift(x, m);
  bool ok = y.system() == s;
  const std::size_t horizon = 2 * (number_size(x) + m) + 4;
  for (std::size_t n = 1; n <= horizon && ok; ++n) ok = y.digit_at(n) == x.digit_at(n < m ? n : n + 1);

  // a variable alphabet at (m, m + 1) must leave the system
  std::vector<Base> head;
  for (std::size_t k = 1; k <= m + 1; ++k) head.push_back(rng.range(2L, b.max_q));
  if (head[m - 1] == head[m]) head[m] = head[m] == 2 ? 3 : head[m] - 1;
  const auto var = NumeralSystem::cantor(EventuallyPeriodicSeq<Base>(head, {rng.range(2L, b.max_q)}), signs);
  const auto xv = random_number(rng, var, b.max_prefix);
  const bool escapes = !(generalized_shift(xv, m).system() == var);
  return outcome(ok && escapes, x, m, ok ? "variable-alphabet image stayed in its system" : "digit deletion mismatch");
}

} // namespace detail

namespace detail {

inline std::map<std::string, SuiteInfo>& registry() {
  static std::map<std::string, SuiteInfo> table = {
      {"eq4", {"unsigned Cantor: digit surgery equals q_m x - (q_m - 1) G - i_m/(q_1..q_{m-1})", 1000, detail::eq4}},
      {"alternating", {"alternating Cantor, position-signed: surgery equals -q_m x + (1 + q_m) G + ...", 1000,
                       detail::alternating}},
      {"general", {"signed Cantor, digit-signed, all four (m, m+1) sign cases: surgery equals closed form", 1000,
                   detail::general_signed}},
      {"qtilde", {"Q-tilde, all four (m, m+1) sign cases: surgery equals closed form", 1000, detail::qtilde}},
      {"theorem-a", {"sigma o sigma_2^m = sigma^(m+1), digitwise and valuewise", 200, detail::theorem_a}},
      {"theorem-b", {"sigma^(k_n-n) o removals = sigma^(k_n); consecutive runs with exponent k_1-1", 200,
                     detail::theorem_b}},
      {"jump", {"unsigned Cantor: jump of sigma_n at a branch point at n is -1/(q_1..q_{n-1})", 100,
                detail::jump_positive}},
      {"jump-signed", {"signed Cantor: |jump| = 1/(q_1..q_{n-1}) in every sign case", 400, detail::jump_signed}},
      {"continuity", {"sigma_m continuous at branch points at n != m, every sign case", 400, detail::continuity}},
      {"duality", {"beta/gamma partner representations have equal values, every sign case", 800, detail::duality}},
      {"residual", {"x - sigma_m(x) = i_m/(q_1..q_m) + sigma^m(x)(1 - q_m)/(q_1..q_m)", 500, detail::residual}},
      {"decode", {"eval(decode(v)) = v for in-interval rationals, three system flavors", 1500,
                  detail::decode_roundtrip}},
      {"canonical", {"decode(eval(x)) = canonicalize(x), idempotent, partner-invariant", 500, detail::canonical}},
      {"segments", {"segment table tiles the base interval; interior samples collinear with declared slope", 50,
                    detail::segments}},
      {"constant-alphabet", {"constant alphabets are closed under sigma_m; variable alphabets escape", 200,
                             constant_alphabet}},
  };
  return table;
}

} // namespace detail

inline const std::map<std::string, SuiteInfo>& suites() { return detail::registry(); }

/// Adds or replaces a suite; not thread-safe with concurrent runs.
inline void register_suite(const std::string& name, SuiteInfo info) { detail::registry()[name] = std::move(info); }

inline void unregister_suite(const std::string& name) { detail::registry().erase(name); }

struct SuiteReport {
  std::string suite;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::optional<json> minimal_failure;
  std::map<std::string, std::size_t> notes; // note -> number of trials where it held

  bool ok() const noexcept { return passed == trials; }

  std::string text() const {
    std::ostringstream os;
    os << suite << ": " << passed << "/" << trials << " pass\n";
    for (const auto& [name, count] : notes) os << suite << ": " << name << ": " << count << "/" << trials << "\n";
    if (minimal_failure) os << "minimal failing case: " << minimal_failure->dump() << "\n";
    return os.str();
  }
};

inline SuiteReport run_suite(const VerifyConfig& cfg) {
  const auto& table = suites();
  auto it = table.find(cfg.suite);
  if (it == table.end()) throw domain_error("unknown verify suite \"" + cfg.suite + "\"");
  SuiteReport report;
  report.suite = cfg.suite;
  report.trials = cfg.trials ? cfg.trials : it->second.default_trials;
  std::optional<std::pair<std::size_t, std::size_t>> best; // (size, trial)
  for (std::size_t t = 0; t < report.trials; ++t) {
    Rng rng = trial_rng(cfg.seed, cfg.suite, t);
    TrialResult r;
    try {
      r = it->second.run(rng, cfg.bounds, t);
    } catch (const std::exception& e) {
      r.pass = false;
      r.failure = {{"detail", std::string("exception: ") + e.what()}};
    }
    for (const auto& [name, held] : r.notes) report.notes[name] += held ? 1 : 0;
    if (r.pass) {
      ++report.passed;
      continue;
    }
    if (!best || r.size < best->first) {
      best = {r.size, t};
      json failure = r.failure;
      failure["suite"] = cfg.suite;
      failure["trial"] = t;
      failure["seed"] = cfg.seed;
      report.minimal_failure = std::move(failure);
    }
  }
  return report;
}

} // namespace varalpha::verify
