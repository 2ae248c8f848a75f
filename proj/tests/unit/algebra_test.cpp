#include <gtest/gtest.h>

#include "tomlink/algebra.hpp"

using namespace tomlink;

namespace {

RingPtr scroll_ring() {
  return Ring::make({"t", "s", "x1", "x2", "x3", "y1", "y2", "y3", "y4"},
                    {{0, 2, 1, 1, 1, 6, 5, 4, 3}, {1, 1, 0, 0, 0, -1, -1, -1, -1}});
}

RingPtr plain_ring(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return Ring::make(names, {std::vector<long>(static_cast<std::size_t>(n), 1)});
}

}  // namespace

TEST(Parse, TwoTermPolynomial) {
  auto R = scroll_ring();
  Polynomial p = parse_polynomial("x1*x2^2 - y4", R);
  EXPECT_EQ(p.size(), 2u);
}

TEST(Parse, ZeroIsEmpty) {
  EXPECT_TRUE(parse_polynomial("0", scroll_ring()).is_zero());
}

TEST(Parse, UnderscoredEntryRoundTrips) {
  auto R = scroll_ring();
  Polynomial p = parse_polynomial("-x_2^3 + y_4", R);
  EXPECT_EQ(p, parse_polynomial("y4 - x2^3", R));
  EXPECT_EQ(parse_polynomial(p.to_string(), R), p);
  EXPECT_EQ(parse_polynomial(parse_polynomial(p.to_string(), R).to_string(), R).to_string(), p.to_string());
}

TEST(Parse, JuxtapositionAndRationals) {
  auto R = scroll_ring();
  EXPECT_EQ(parse_polynomial("2x1y1^2", R), parse_polynomial("2*x1*y1*y1", R));
  EXPECT_EQ(parse_polynomial("1/2 t (x1 + x2)^2", R),
            parse_polynomial("1/2*t*x1^2 + t*x1*x2 + 1/2*t*x2^2", R));
}

TEST(Parse, Errors) {
  auto R = scroll_ring();
  EXPECT_THROW(parse_polynomial("x1 + z", R), AlgebraError);
  EXPECT_THROW(parse_polynomial("x1^", R), AlgebraError);
  EXPECT_THROW(parse_polynomial("x1^-2", R), AlgebraError);
}

TEST(Arith, DifferenceOfSquares) {
  auto R = scroll_ring();
  Polynomial a = parse_polynomial("x1 + y1", R), b = parse_polynomial("x1 - y1", R);
  EXPECT_EQ(arith(a, b, ArithOp::Mul), parse_polynomial("x1^2 - y1^2", R));
  EXPECT_TRUE(arith(a, Polynomial(R), ArithOp::Mul).is_zero());
}

TEST(Arith, RingMismatch) {
  EXPECT_THROW(arith(parse_polynomial("x1", plain_ring(2)), parse_polynomial("x1", scroll_ring()), ArithOp::Add),
               AlgebraError);
}

TEST(ExactDivide, Basic) {
  auto R = scroll_ring();
  EXPECT_EQ(exact_divide(parse_polynomial("x1^2*y1", R), parse_polynomial("x1", R)), parse_polynomial("x1*y1", R));
  EXPECT_THROW(exact_divide(parse_polynomial("x1 + 1", R), parse_polynomial("x2", R)), AlgebraError);
}

TEST(BiDegreeOf, Examples) {
  auto P7 = Ring::make({"x1", "x2", "x3", "x4", "x5", "x6", "x7", "x8"}, {{1, 1, 1, 2, 3, 4, 5, 6}});
  EXPECT_EQ(bidegree_of(parse_polynomial("x1*x2", P7)).top, 2);
  auto R = scroll_ring();
  BiDegree d = bidegree_of(parse_polynomial("t*y4^2", R));
  EXPECT_EQ(d.top, 6);
  EXPECT_EQ(d.bottom, -1);
  EXPECT_THROW(bidegree_of(parse_polynomial("x1 + y1", R)), AlgebraError);
  EXPECT_THROW(bidegree_of(Polynomial(R)), AlgebraError);
}

TEST(Substitute, UnitAndIdentity) {
  auto R = scroll_ring();
  Polynomial p = parse_polynomial("s*y1 - x1^8 - x2*y1", R);
  Polynomial q = substitute(p, {{"y1", Polynomial::constant(R, 1)}});
  EXPECT_EQ(q, parse_polynomial("s - x1^8 - x2", R));
  EXPECT_EQ(substitute(p, {}), p);
}

TEST(WellForm, TomBlowupGrading) {
  long r = 2;
  std::vector<long> top{0, r, 1, 1, 1, 6, 5, 4, 3};
  std::vector<long> bottom{-r, 0, 1, 1, 1, r + 6, r + 5, r + 4, r + 3};
  auto R = Ring::make({"t", "s", "x1", "x2", "x3", "y1", "y2", "y3", "y4"}, {top, bottom});
  WellFormResult w = well_form(R);
  EXPECT_EQ(w.ring->weights()[0], top);
  EXPECT_EQ(w.ring->weights()[1], (std::vector<long>{1, 1, 0, 0, 0, -1, -1, -1, -1}));
  for (int k = 0; k < 9; ++k)
    for (int row = 0; row < 2; ++row) {
      Rational v = w.transform[row][0] * top[k] + w.transform[row][1] * bottom[k];
      EXPECT_EQ(v, Rational(w.ring->weight(row, k)));
    }
}

TEST(WellForm, FixedPointAndPivot) {
  auto R = scroll_ring();
  WellFormResult w = well_form(R);
  EXPECT_TRUE(w.ring->same_as(*R));
  WellFormResult loc = well_form(R, R->require_index("y1"));
  EXPECT_EQ(loc.ring->weights()[0], (std::vector<long>{6, 8, 1, 1, 1, 0, -1, -2, -3}));
  EXPECT_EQ(loc.ring->weights()[1], R->weights()[1]);
  Rational det = loc.transform[0][0] * loc.transform[1][1] - loc.transform[0][1] * loc.transform[1][0];
  EXPECT_NE(det, 0);
}

TEST(WellForm, ZeroColumn) {
  auto R = Ring::make({"a", "b", "c"}, {{0, 1, 2}, {0, 1, -1}});
  EXPECT_THROW(well_form(R), AlgebraError);
}

TEST(RandomGeneral, DenseLinearForm) {
  auto R = plain_ring(3);
  Polynomial p = random_general(1, R, nullptr, 7);
  EXPECT_EQ(p.size(), 3u);
  EXPECT_EQ(p, random_general(1, R, nullptr, 7));
}

TEST(RandomGeneral, IdealFilter) {
  auto R = Ring::make({"x1", "x2", "x3", "y1", "y2", "y3", "y4"}, {{1, 1, 1, 6, 5, 4, 3}});
  auto in_ideal = [](const Monomial& m) { return m.e[3] + m.e[4] + m.e[5] + m.e[6] > 0; };
  Polynomial p = random_general(3, R, in_ideal, 11);
  ASSERT_FALSE(p.is_zero());
  for (const auto& t : p.terms()) EXPECT_TRUE(in_ideal(t.m));
  EXPECT_THROW(random_general(2, R, in_ideal, 11), AlgebraError);
}

class RingAxioms : public ::testing::TestWithParam<int> {};

TEST_P(RingAxioms, ExactIdentities) {
  auto R = Ring::make({"x1", "x2", "x3", "y1"}, {{1, 1, 1, 2}});
  std::uint64_t seed = static_cast<std::uint64_t>(GetParam());
  Polynomial p = random_general(2, R, nullptr, seed, 1);
  Polynomial q = random_general(3, R, nullptr, seed, 2);
  Polynomial r = random_general(2, R, nullptr, seed, 3);
  EXPECT_EQ((p + q) + r, p + (q + r));
  EXPECT_EQ(p * (q + r), p * q + p * r);
  EXPECT_EQ(p * q, q * p);
  EXPECT_EQ(exact_divide(p * q, q), p);
  EXPECT_EQ(bidegree_of(p * q).top, bidegree_of(p).top + bidegree_of(q).top);
  EXPECT_EQ(parse_polynomial(p.to_string(), R), p);
}

INSTANTIATE_TEST_SUITE_P(Seeds, RingAxioms, ::testing::Range(0, 8));
