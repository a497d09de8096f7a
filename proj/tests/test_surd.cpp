#include <gtest/gtest.h>

#include "pierce/surd.hpp"

using namespace pierce;

TEST(RefineSign, SqrtTwoMinusOne) {
  EXPECT_EQ(refine_sign(SurdSum::sqrt(2) - SurdSum(1)), 1);
  EXPECT_EQ(refine_sign(SurdSum(1) - SurdSum::sqrt(2)), -1);
}

TEST(RefineSign, PerfectSquareIsExactZero) {
  SurdSum e = SurdSum::sqrt(4) - SurdSum(2);
  EXPECT_TRUE(e.is_zero());
  EXPECT_EQ(refine_sign(e), 0);
}

TEST(RefineSign, SymbolicCancellation) {
  // sqrt(3) + sqrt(12) - sqrt(27) = sqrt(3) + 2 sqrt(3) - 3 sqrt(3)
  SurdSum e = SurdSum::sqrt(3) + SurdSum::sqrt(12) - SurdSum::sqrt(27);
  EXPECT_TRUE(e.is_zero());
  EXPECT_EQ(refine_sign(e), 0);
}

TEST(RefineSign, RationalRadicands) {
  // sqrt(1/2) * sqrt(2) = 1
  SurdSum e = SurdSum::sqrt(Scalar(1, 2)) * SurdSum::sqrt(2) - SurdSum(1);
  EXPECT_TRUE(e.is_zero());
  // sqrt(3/4) = sqrt(3)/2
  EXPECT_TRUE((SurdSum::sqrt(Scalar(3, 4)) - Scalar(1, 2) * SurdSum::sqrt(3)).is_zero());
}

TEST(RefineSign, NearCancellationNeedsRefinement) {
  // sqrt(2) + sqrt(3) vs sqrt(10) : 3.1462... vs 3.1622...
  EXPECT_EQ(refine_sign(SurdSum::sqrt(2) + SurdSum::sqrt(3) - SurdSum::sqrt(10)), -1);
  // (1 + 1e-30) - sqrt(1 + 2e-30) ~ 5e-61 > 0 : forces deep refinement
  Scalar tiny(1, Integer("1000000000000000000000000000000"));
  SurdSum e = SurdSum(Scalar(1) + tiny) - SurdSum::sqrt(Scalar(1) + 2 * tiny);
  EXPECT_EQ(refine_sign(e), 1);
}

TEST(RefineSign, ExhaustionIsReported) {
  Scalar tiny(1, Integer("1000000000000000000000000000000"));
  SurdSum e = SurdSum(Scalar(1) + tiny) - SurdSum::sqrt(Scalar(1) + 2 * tiny);
  EXPECT_THROW(refine_sign(e, 64), Error);
}

TEST(QuadNumber, SignMatchesDouble) {
  Scalar D = 3;
  EXPECT_EQ((QuadNumber{2, -1}).sign(D), 1);    // 2 - 1.732
  EXPECT_EQ((QuadNumber{-2, 1}).sign(D), -1);
  EXPECT_EQ((QuadNumber{3, Scalar(-3, 1)}).sign(Scalar(1)), 0);
  EXPECT_EQ((QuadNumber{0, 0}).sign(D), 0);
  QuadNumber s = mul(QuadNumber{0, 1}, QuadNumber{0, 1}, D);  // sqrt3^2
  EXPECT_EQ(s.a, 3);
  EXPECT_EQ(s.b, 0);
}
