#include <gtest/gtest.h>

#include "varalpha/exact_series.hpp"
#include "varalpha/rational.hpp"

#include "fixtures.hpp"

using namespace varalpha;
using fixtures::R;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(Rational::parse("6/8"), R(3, 4));
  EXPECT_EQ(Rational::parse("-5"), R(-5));
  EXPECT_EQ(Rational::parse("-67/110").str(), "-67/110");
  EXPECT_THROW(Rational::parse("1/0"), parse_error);
  EXPECT_THROW(Rational::parse("1/-2"), parse_error);
  EXPECT_THROW(Rational::parse("0.5"), parse_error);
  EXPECT_THROW(Rational::parse(""), parse_error);
}

TEST(Rational, DecimalRendering) {
  EXPECT_EQ(R(123, 1000).to_decimal(12), "0.123");
  EXPECT_EQ(R(-1, 6).to_decimal(4), "-0.1667");
  EXPECT_EQ(R(2, 3).to_decimal(0), "1");
  EXPECT_EQ(R(0).to_decimal(5), "0");
  EXPECT_EQ(R(-10, 11).to_decimal(3), "-0.909");
}

TEST(Rational, Arithmetic) {
  EXPECT_EQ(R(1, 2) + R(1, 3), R(5, 6));
  EXPECT_EQ(R(1, 2) * R(-2, 3), R(-1, 3));
  EXPECT_EQ(R(-3, 4).abs(), R(3, 4));
  EXPECT_EQ(R(-3, 4).reciprocal(), R(-4, 3));
  EXPECT_THROW(R(0).reciprocal(), domain_error);
  EXPECT_LT(R(-1, 3), R(-1, 4));
}

TEST(ExactSeries, TermAt) {
  EventuallyPeriodicSeq<long> fact({2, 3, 4}, {4});
  EXPECT_EQ(fact.term_at(2), 3);
  EXPECT_EQ(fact.term_at(9), 4);
  EventuallyPeriodicSeq<long> alt({}, {5, 7});
  EXPECT_EQ(alt.term_at(4), 7);
  EXPECT_THROW(alt.term_at(0), domain_error);
}

TEST(ExactSeries, NormalFormMakesEqualSequencesEqual) {
  EXPECT_EQ(EventuallyPeriodicSeq<long>({2, 4}, {4}), EventuallyPeriodicSeq<long>({2}, {4, 4}));
  EXPECT_EQ(EventuallyPeriodicSeq<long>({1, 5, 7}, {5, 7}), EventuallyPeriodicSeq<long>({1}, {5, 7}));
  EXPECT_EQ(EventuallyPeriodicSeq<long>({7}, {5, 7}), EventuallyPeriodicSeq<long>({}, {7, 5}));
  EXPECT_FALSE(EventuallyPeriodicSeq<long>({2}, {4}) == EventuallyPeriodicSeq<long>({3}, {4}));
}

TEST(ExactSeries, RemovedAndShifted) {
  EventuallyPeriodicSeq<long> fact({2, 3, 4}, {4});
  auto removed = fact.removed(2);
  for (std::size_t n = 1; n <= 12; ++n) EXPECT_EQ(removed.term_at(n), fact.term_at(n < 2 ? n : n + 1));
  EXPECT_EQ(fact.shifted(1), EventuallyPeriodicSeq<long>({3, 4}, {4}));
  EventuallyPeriodicSeq<long> cyc({1}, {2, 3, 5});
  for (std::size_t m = 1; m <= 7; ++m) {
    auto r = cyc.removed(m);
    auto s = cyc.shifted(m);
    for (std::size_t n = 1; n <= 20; ++n) {
      EXPECT_EQ(r.term_at(n), cyc.term_at(n < m ? n : n + 1)) << m << " " << n;
      EXPECT_EQ(s.term_at(n), cyc.term_at(n + m));
    }
  }
}

TEST(ExactSeries, GeometricBlockSum) {
  EXPECT_EQ(geometric_block_sum(R(1, 2), R(1, 2)), R(1));
  EXPECT_EQ(geometric_block_sum(R(0), R(1, 4)), R(0));
  EXPECT_EQ(geometric_block_sum(R(3, 8), R(1, 4)), R(1, 2));
  EXPECT_THROW(geometric_block_sum(R(1), R(1)), domain_error);
  EXPECT_THROW(geometric_block_sum(R(1), R(-1, 2)), domain_error);
}

TEST(ExactSeries, PeriodicTailSum) {
  auto pow10 = [](std::size_t n) {
    Rational p(1);
    for (std::size_t i = 0; i < n; ++i) p *= R(10);
    return p;
  };
  auto nines = [&](std::size_t n) { return R(9) / pow10(n); };
  EXPECT_EQ(periodic_tail_sum(nines, 1, 1), R(1));
  auto nega = [&](std::size_t n) { return (n % 2 ? R(-9) : R(9)) / pow10(n); };
  EXPECT_EQ(periodic_tail_sum(nega, 1, 2), R(-9, 11));
  auto odd_only = [&](std::size_t n) { return n % 2 ? R(9) / pow10(n) : R(0); };
  EXPECT_EQ(periodic_tail_sum(odd_only, 1, 2), R(10, 11));
  EXPECT_EQ(periodic_tail_sum(nines, 1, 1, R(1, 10)), R(1));
}
