#include <gtest/gtest.h>

#include "varalpha/numbers.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace varalpha;
using namespace fixtures;

TEST(DigitAt, Examples) {
  EXPECT_EQ(digit_at(zeros(dec(), {1, 2, 3}), 2), 2);
  EXPECT_EQ(digit_at(maxed(dec(), {2, 4}), 5), 9);
  EXPECT_EQ(digit_at(cyc(neg(), {}, {9, 0}), 3), 9);
}

TEST(RepresentedNumber, RejectsBadDigitsAndMisalignedCycles) {
  EXPECT_THROW(zeros(dec(), {1, 10}), digit_range_error);
  EXPECT_THROW(zeros(dec(), {-1}), digit_range_error);
  EXPECT_THROW(cyc(fact(), {1}, {2}), alignment_error);   // cycle starts inside the base prefix
  EXPECT_THROW(cyc(neg(), {1}, {2}), alignment_error);    // odd length against period 2
  EXPECT_NO_THROW(cyc(neg(), {1, 2}, {3, 4}));
}

TEST(RepresentedNumber, EqualStreamsCompareEqual) {
  EXPECT_EQ(cyc(dec(), {1, 2}, {0}), zeros(dec(), {1, 2}));
  EXPECT_EQ(cyc(dec(), {1, 2, 9}, {9, 9}), maxed(dec(), {1, 2}));
  EXPECT_EQ(cyc(neg(), {3, 4}, {3, 4}), cyc(neg(), {}, {3, 4}));
  EXPECT_FALSE(zeros(dec(), {1, 2}) == zeros(neg(), {1, 2}));
}

TEST(Eval, Examples) {
  EXPECT_EQ(eval(zeros(dec(), {1, 2, 3})), R(123, 1000));
  EXPECT_EQ(eval(zeros(fact(), {1, 2, 3})), R(23, 24));
  EXPECT_EQ(eval(zeros(alt(), {1, 2})), R(-1, 6));
  EXPECT_EQ(eval(zeros(qt(), {1, 1})), R(7, 16));
  EXPECT_EQ(eval(cyc(neg(), {6, 0}, {9, 0})), R(-67, 110));
}

TEST(Eval, MaxTailsTelescope) {
  EXPECT_EQ(eval(maxed(dec(), {})), R(1));
  EXPECT_EQ(eval(maxed(dec(), {2, 4})), R(1, 4));
  EXPECT_EQ(eval(maxed(qt(), {})), R(1));
  EXPECT_EQ(eval(maxed(fact(), {0, 1})), R(2, 6));
}

TEST(Eval, AgreesWithDigitByDigitOracle) {
  std::vector<RepresentedNumber> xs = {
      zeros(dec(), {1, 2, 3}), cyc(neg(), {6, 0}, {9, 0}), maxed(alt(), {1}), cyc(fact(), {1, 2, 3}, {3, 1}),
      cyc(qt(), {1}, {0, 1, 1}), cyc(qt(SignPattern::odd()), {1, 0}, {1, 1}),
      cyc(NumeralSystem::cantor(EventuallyPeriodicSeq<Base>({5}, {2, 7, 3}), SignPattern::even()), {4},
          {1, 6, 2, 0, 6, 2})};
  for (const auto& x : xs) {
    const Rational v = eval(x);
    EXPECT_EQ(v, oracle::value(x));
    // and the truncated sums approach it within the remaining weight
    const auto model = oracle::model_of(x.system());
    for (std::size_t n : {5u, 12u, 30u}) {
      auto [sum, w] = oracle::partial_sum(model, [&](std::size_t k) { return x.digit_at(k); }, n);
      EXPECT_LE((v - sum).abs(), w);
    }
  }
}

TEST(Decode, Examples) {
  EXPECT_EQ(decode(dec(), R(1, 8), 8), zeros(dec(), {1, 2, 5}));
  EXPECT_EQ(decode(dec(), R(1, 4), 8), zeros(dec(), {2, 5}));
  EXPECT_EQ(decode(neg(), R(-67, 110), 8), cyc(neg(), {6, 0}, {9, 0}));
}

TEST(Decode, FailsLoudly) {
  EXPECT_THROW(decode(dec(), R(1, 7), 3), inexact_decode_error);
  EXPECT_THROW(decode(dec(), R(3, 2), 20), range_error);
  EXPECT_THROW(decode(neg(), R(1, 5), 20), range_error);
}

TEST(Decode, DecimalMatchesLongDivision) {
  for (long den = 2; den <= 60; ++den)
    for (long num = 0; num < den; ++num) {
      auto exp = oracle::long_division(num, den);
      auto got = decode(dec(), R(num, den), 200);
      auto want = exp.cycle.empty() ? zeros(dec(), exp.prefix) : cyc(dec(), exp.prefix, exp.cycle);
      EXPECT_EQ(got, want) << num << "/" << den;
    }
}

TEST(Decode, UnsignedCantorMatchesGreedyDigits) {
  auto s = NumeralSystem::cantor(EventuallyPeriodicSeq<Base>({3, 5}, {2, 7}), SignPattern::none());
  for (long den : {7L, 11L, 30L, 42L})
    for (long num = 0; num < den; ++num) {
      auto x = decode(s, R(num, den), 500);
      auto greedy = oracle::greedy_cantor_digits(s, R(num, den), 24);
      for (std::size_t n = 1; n <= 24; ++n) EXPECT_EQ(x.digit_at(n), greedy[n - 1]) << num << "/" << den;
    }
}

TEST(Cylinder, Examples) {
  std::vector<Digit> d12 = {1, 2}, d1 = {1};
  EXPECT_EQ(cylinder(dec(), d12), (Interval{R(12, 100), R(13, 100)}));
  EXPECT_EQ(cylinder(neg(), d1), (Interval{R(-6, 55), R(-1, 110)}));
  EXPECT_EQ(cylinder(neg(), d1).width(), R(1, 10));
  EXPECT_EQ(cylinder(qt(), d1), (Interval{R(1, 4), R(1)}));
}

namespace {

std::vector<std::vector<Digit>> all_prefixes(const NumeralSystem& s, std::size_t n) {
  std::vector<std::vector<Digit>> out = {{}};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<Digit>> next;
    for (const auto& p : out)
      for (Digit d = 0; d <= s.max_digit(k); ++d) {
        auto q = p;
        q.push_back(d);
        next.push_back(q);
      }
    out = std::move(next);
  }
  return out;
}

} // namespace

TEST(Cylinder, TilingAndWidths) {
  std::vector<NumeralSystem> systems = {dec(), neg(), fact(), alt(), qt(),
                                        NumeralSystem::cantor(EventuallyPeriodicSeq<Base>({3}, {2, 4}),
                                                              SignPattern(EventuallyPeriodicSeq<bool>({}, {true, true, false})))};
  for (const auto& s : systems)
    for (std::size_t n = 1; n <= 3; ++n) {
      std::vector<Interval> cells;
      for (const auto& p : all_prefixes(s, n)) {
        Interval c = cylinder(s, p);
        Rational expected_width(1);
        for (std::size_t k = 1; k <= n; ++k) expected_width *= s.weight(k, p[k - 1]);
        EXPECT_EQ(c.width(), expected_width * base_interval(s).width());
        if (s.is_cantor()) {
          Rational q(1);
          for (std::size_t k = 1; k <= n; ++k) q *= R(s.base_at(k));
          EXPECT_EQ(c.width(), q.reciprocal());
        }
        cells.push_back(c);
      }
      std::sort(cells.begin(), cells.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
      EXPECT_EQ(cells.front().lo, base_interval(s).lo);
      EXPECT_EQ(cells.back().hi, base_interval(s).hi);
      for (std::size_t i = 1; i < cells.size(); ++i) EXPECT_EQ(cells[i - 1].hi, cells[i].lo);
    }
}

TEST(QuasiPartner, Examples) {
  EXPECT_EQ(quasi_partner(zeros(dec(), {2, 5})), maxed(dec(), {2, 4}));
  auto p = quasi_rational_point(cyc(neg(), {6, 0}, {9, 0}));
  ASSERT_TRUE(p);
  EXPECT_EQ(p->partner, cyc(neg(), {7, 9}, {0, 9}));
  EXPECT_EQ(eval(p->partner), R(-67, 110));
  EXPECT_EQ(p->position, 1u);
  EXPECT_EQ(p->row, SignCase::member_then_non);
  EXPECT_FALSE(quasi_partner(cyc(dec(), {1, 2, 3}, {5})));
}

TEST(QuasiRational, Examples) {
  EXPECT_TRUE(is_quasi_rational(zeros(dec(), {2, 5})));
  EXPECT_FALSE(is_quasi_rational(cyc(dec(), {1, 2, 3}, {5})));
  EXPECT_TRUE(is_quasi_rational(zeros(qt(), {1})));
  EXPECT_EQ(eval(*quasi_partner(zeros(qt(), {1}))), R(1, 4));
  EXPECT_FALSE(is_quasi_rational(zeros(dec(), {})));  // the endpoint 0 has one representation
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(canonicalize(maxed(dec(), {2, 4})), zeros(dec(), {2, 5}));
  EXPECT_EQ(canonicalize(zeros(dec(), {1, 2, 3})), zeros(dec(), {1, 2, 3}));
  EXPECT_EQ(canonicalize(cyc(neg(), {7, 9}, {0, 9})), cyc(neg(), {6, 0}, {9, 0}));
}

TEST(Canonicalize, StableAndPartnerInvariant) {
  std::vector<RepresentedNumber> xs = {maxed(dec(), {2, 4}), cyc(neg(), {7, 9}, {0, 9}), maxed(alt(), {1, 0}),
                                       zeros(fact(), {1, 1}), maxed(qt(), {0, 1})};
  for (const auto& x : xs) {
    auto c = canonicalize(x);
    EXPECT_EQ(canonicalize(c), c);
    EXPECT_EQ(eval(c), eval(x));
    if (auto p = quasi_partner(x)) {
      EXPECT_EQ(canonicalize(*p), c);
    }
  }
}
