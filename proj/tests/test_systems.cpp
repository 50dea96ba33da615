#include <gtest/gtest.h>

#include "varalpha/systems.hpp"

#include "fixtures.hpp"
#include "oracles.hpp"

using namespace varalpha;
using namespace fixtures;

TEST(Signs, Rho) {
  EXPECT_EQ(rho(SignPattern::odd(), 3), 1);
  EXPECT_EQ(rho(SignPattern::odd(), 4), 2);
  for (std::size_t n = 1; n < 20; ++n) EXPECT_EQ(rho(SignPattern::none(), n), 2);
}

TEST(Signs, RhoAgreesWithSignFactorAndMembership) {
  SignPattern p(EventuallyPeriodicSeq<bool>({true, false, false}, {true, true, false}));
  for (std::size_t n = 1; n <= 40; ++n) {
    const bool member = p.is_member(n);
    EXPECT_EQ(p.sign_factor(n) == -1, member);
    EXPECT_EQ(p.rho(n) == 1, member);
  }
}

TEST(Columns, Cumulative) {
  EXPECT_EQ(column_cumulative(quarter_column(), 0), R(0));
  EXPECT_EQ(column_cumulative(quarter_column(), 1), R(1, 4));
  EXPECT_EQ(column_cumulative(QTildeColumn({R(1, 3), R(1, 3), R(1, 3)}), 2), R(2, 3));
}

TEST(Validate, Reports) {
  EXPECT_TRUE(validate(qt()).ok());
  auto bad_col = NumeralSystem::qtilde(EventuallyPeriodicSeq<QTildeColumn>::constant(QTildeColumn({R(1, 2), R(1, 3)})),
                                       SignPattern::none());
  auto report = validate(bad_col);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations.front().message, "column sum ≠ 1");
  auto bad_base = NumeralSystem::cantor(EventuallyPeriodicSeq<Base>({3, 1}, {4}), SignPattern::none());
  report = validate(bad_base);
  ASSERT_FALSE(report.ok());
  EXPECT_EQ(report.violations.front().message, "q_n ≥ 2 required");
  EXPECT_THROW(require_valid(bad_base), validation_error);
}

TEST(BaseInterval, Examples) {
  EXPECT_EQ(base_interval(dec()), (Interval{R(0), R(1)}));
  EXPECT_EQ(base_interval(neg()), (Interval{R(-10, 11), R(1, 11)}));
  EXPECT_EQ(base_interval(qt()), (Interval{R(0), R(1)}));
}

TEST(BaseInterval, CantorMatchesPerPositionOracle) {
  std::vector<NumeralSystem> systems = {
      neg(), alt(), fact(),
      NumeralSystem::cantor(EventuallyPeriodicSeq<Base>({5}, {2, 7, 3}),
                            SignPattern(EventuallyPeriodicSeq<bool>({false, true}, {true, false, false})))};
  for (const auto& s : systems) {
    TailExtremes ex(s);
    for (std::size_t n = 1; n <= 8; ++n) {
      auto [lo, hi] = oracle::cantor_tail_range(s, n);
      EXPECT_EQ(ex.at(n), (Interval{lo, hi})) << n;
    }
  }
}

TEST(BaseInterval, UnsignedIsUnitInterval) {
  auto s = NumeralSystem::qtilde(
      EventuallyPeriodicSeq<QTildeColumn>({QTildeColumn({R(1, 2), R(1, 2)})},
                                          {QTildeColumn({R(1, 5), R(3, 5), R(1, 5)}), quarter_column()}),
      SignPattern::none());
  EXPECT_EQ(base_interval(s), (Interval{R(0), R(1)}));
  EXPECT_EQ(base_interval(fact()), (Interval{R(0), R(1)}));
}

TEST(BaseInterval, SignedQTildeBoundsTheBruteForceSums) {
  // every truncated digit string plus the extreme remainders stays inside
  auto s = qt(SignPattern::odd());
  const Interval range = base_interval(s);
  const auto model = oracle::model_of(s);
  for (unsigned mask = 0; mask < (1u << 10); ++mask) {
    auto digit = [&](std::size_t n) { return static_cast<Digit>((mask >> (n - 1)) & 1u); };
    auto [sum, w] = oracle::partial_sum(model, digit, 10);
    const Interval rest = TailExtremes(s).at(11);
    EXPECT_LE(range.lo, sum + w * rest.lo);
    EXPECT_GE(range.hi, sum + w * rest.hi);
  }
}

TEST(RemoveIndex, Examples) {
  EXPECT_EQ(remove_index(fact(), 2).base(), EventuallyPeriodicSeq<Base>({2, 4}, {4}));
  EXPECT_EQ(remove_index(dec(), 5), dec());
  auto n1 = remove_index(neg(), 1);
  EXPECT_EQ(n1.base(), EventuallyPeriodicSeq<Base>::constant(10));
  EXPECT_EQ(n1.signs(), SignPattern::even());
}

TEST(ShiftSystem, Examples) {
  EXPECT_EQ(shift_system(fact(), 1).base(), EventuallyPeriodicSeq<Base>({3, 4}, {4}));
  EXPECT_EQ(shift_system(dec(), 7), dec());
  EXPECT_EQ(shift_system(neg(), 1).signs(), SignPattern::even());
}

TEST(RemoveIndex, ReadsOriginalPositionsExhaustively) {
  auto s = NumeralSystem::cantor(EventuallyPeriodicSeq<Base>({2, 9}, {3, 5, 7}),
                                 SignPattern(EventuallyPeriodicSeq<bool>({true}, {false, true})));
  const std::size_t horizon = s.prefix_length() + 3 * s.period();
  for (std::size_t m = 1; m <= horizon; ++m) {
    auto r = remove_index(s, m);
    for (std::size_t n = 1; n <= horizon; ++n) {
      const std::size_t src = n < m ? n : n + 1;
      EXPECT_EQ(r.base_at(n), s.base_at(src));
      EXPECT_EQ(r.is_member(n), s.is_member(src));
    }
  }
}

TEST(RemoveIndex, ConstantSystemsAreFixed) {
  for (Base q = 2; q <= 12; ++q)
    for (const auto& signs : {SignPattern::none(), SignPattern::all()}) {
      auto s = NumeralSystem::cantor(EventuallyPeriodicSeq<Base>::constant(q), signs);
      for (std::size_t m = 1; m <= 10; ++m) EXPECT_EQ(remove_index(s, m), s);
    }
  EXPECT_EQ(remove_index(qt(), 3), qt());
}
