#include <gtest/gtest.h>

#include "varalpha/analysis.hpp"

#include "fixtures.hpp"

using namespace varalpha;
using namespace fixtures;

TEST(AffineOnCylinder, Examples) {
  std::vector<Digit> d12 = {1, 2}, d1 = {1};
  auto dm = affine_on_cylinder(dec(), d12);
  EXPECT_EQ(dm, (AffineMap{R(10), R(-11, 10)}));
  EXPECT_EQ(dm.apply(R(123, 1000)), R(13, 100));
  EXPECT_EQ(affine_on_cylinder(alt(), d1, ShiftVariant::position_signed), (AffineMap{R(-2), R(-1)}));
  EXPECT_EQ(affine_on_cylinder(qt(), d1), (AffineMap{R(4, 3), R(-1, 3)}));
}

TEST(SegmentTable, Examples) {
  auto dec1 = segment_table(dec(), 1);
  ASSERT_EQ(dec1.size(), 10u);
  for (std::size_t i = 0; i < dec1.size(); ++i) {
    EXPECT_EQ(dec1[i].interval.width(), R(1, 10));
    EXPECT_EQ(dec1[i].map.slope, R(10));
    EXPECT_EQ(dec1[i].interval.lo, R(static_cast<long>(i), 10));
  }

  auto alt1 = segment_table(alt(), 1, ShiftVariant::position_signed);
  ASSERT_EQ(alt1.size(), 2u);
  EXPECT_EQ(alt1[0].digits, std::vector<Digit>{1});
  EXPECT_EQ(alt1[1].digits, std::vector<Digit>{0});
  EXPECT_EQ(alt1[0].map.slope, R(-2));
  EXPECT_EQ(alt1[1].map.slope, R(-2));

  auto qt1 = segment_table(qt(), 1);
  ASSERT_EQ(qt1.size(), 2u);
  EXPECT_EQ(qt1[0].interval.width(), R(1, 4));
  EXPECT_EQ(qt1[1].interval.width(), R(3, 4));
  EXPECT_EQ(qt1[0].map.slope, R(4));
  EXPECT_EQ(qt1[1].map.slope, R(4, 3));
}

TEST(SegmentTable, PerCylinderAgreementThroughDecode) {
  std::vector<std::pair<NumeralSystem, ShiftVariant>> cases = {
      {dec(), ShiftVariant::digit_signed}, {neg(), ShiftVariant::digit_signed}, {neg(), ShiftVariant::position_signed},
      {fact(), ShiftVariant::digit_signed}, {alt(), ShiftVariant::position_signed}};
  for (const auto& [s, v] : cases)
    for (std::size_t m = 1; m <= 3; ++m)
      for (const auto& seg : segment_table(s, m, v))
        for (long j = 1; j <= 3; ++j) {
          const Rational x = seg.interval.lo + seg.interval.width() * R(j, 4);
          const auto num = decode(s, x, 400);
          EXPECT_EQ(seg.map.apply(x), eval(generalized_shift(num, m, v)));
          EXPECT_EQ(sigma_at(s, m, x, v), seg.map.apply(x));
        }
}

TEST(Continuity, Examples) {
  auto jump = continuity_at(dec(), 2, zeros(dec(), {2, 5}));
  EXPECT_EQ(jump.kind, ContinuityKind::jump);
  EXPECT_EQ(jump.right_limit, R(1, 5));
  EXPECT_EQ(jump.left_limit, R(3, 10));
  EXPECT_EQ(jump.jump, R(-1, 10));
  // the report does not depend on which representation is passed in
  auto same = continuity_at(dec(), 2, maxed(dec(), {2, 4}));
  EXPECT_EQ(same.jump, jump.jump);

  EXPECT_EQ(continuity_at(dec(), 3, zeros(dec(), {2, 5})).kind, ContinuityKind::continuous);
  for (std::size_t m = 1; m <= 6; ++m)
    EXPECT_EQ(continuity_at(dec(), m, cyc(dec(), {1, 2, 3}, {5})).kind, ContinuityKind::continuous);
}

TEST(Continuity, ContinuousAwayFromTheBranchAlsoInValue) {
  // the limit at x0 is sigma_m(x0), not x0
  auto r = continuity_at(dec(), 3, zeros(dec(), {2, 5}));
  EXPECT_EQ(r.left_limit, R(25, 100));
  EXPECT_EQ(r.left_limit, eval(generalized_shift(zeros(dec(), {2, 5}), 3)));
}

TEST(NumericDerivative, Examples) {
  EXPECT_EQ(numeric_derivative(dec(), 2, zeros(dec(), {1, 2, 3}), R(1, 10000)), R(10));
  const auto alt_point = decode(alt(), R(-1, 6) + R(1, 100), 400);
  EXPECT_EQ(numeric_derivative(alt(), 1, alt_point, R(1, 10000), ShiftVariant::position_signed), R(-2));
  EXPECT_EQ(numeric_derivative(qt(), 1, zeros(qt(), {1, 1}), R(1, 1024)), R(4, 3));
  EXPECT_THROW(numeric_derivative(dec(), 2, zeros(dec(), {1, 2, 3}), R(1, 100)), domain_error);
}

TEST(GraphSamples, Examples) {
  auto dec_pts = graph_samples(dec(), 1, 2);
  ASSERT_EQ(dec_pts.size(), 20u);
  for (std::size_t i = 0; i < dec_pts.size(); i += 2)
    EXPECT_EQ((dec_pts[i + 1].second - dec_pts[i].second) / (dec_pts[i + 1].first - dec_pts[i].first), R(10));

  auto alt_pts = graph_samples(alt(), 1, 3, ShiftVariant::position_signed);
  ASSERT_EQ(alt_pts.size(), 6u);
  for (std::size_t c = 0; c < 2; ++c)
    for (std::size_t i = 1; i < 3; ++i) {
      auto [x0, y0] = alt_pts[3 * c];
      auto [x1, y1] = alt_pts[3 * c + i];
      EXPECT_EQ((y1 - y0) / (x1 - x0), R(-2));
    }

  auto qt_pts = graph_samples(qt(), 1, 2);
  ASSERT_EQ(qt_pts.size(), 4u);
  EXPECT_EQ((qt_pts[1].second - qt_pts[0].second) / (qt_pts[1].first - qt_pts[0].first), R(4));
  EXPECT_EQ((qt_pts[3].second - qt_pts[2].second) / (qt_pts[3].first - qt_pts[2].first), R(4, 3));
  for (std::size_t i = 1; i < qt_pts.size(); ++i) EXPECT_LT(qt_pts[i - 1].first, qt_pts[i].first);
}
