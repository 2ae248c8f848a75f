#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tomlink/pfaffian.hpp"

using namespace tomlink;

namespace {

bool has_occurrence(const std::vector<EntryOccurrence>& v, int k, int l, const std::string& var) {
  for (const auto& o : v)
    if (o.k == k && o.l == l && o.var == var) return true;
  return false;
}

// Minimal y-degree over the terms of p.
int min_y_degree(const Polynomial& p) {
  const Ring& R = *p.ring();
  int best = 1 << 20;
  for (const auto& t : p.terms()) {
    int d = 0;
    for (const char* n : {"y1", "y2", "y3", "y4"}) d += t.m.e[static_cast<std::size_t>(R.require_index(n))];
    best = std::min(best, d);
  }
  return best;
}

}  // namespace

TEST(Pfaffian, UpperIndexRoundTrip) {
  for (int i = 0; i < 10; ++i) {
    auto [k, l] = upper_pair(i);
    EXPECT_EQ(upper_index(k, l), i);
    EXPECT_EQ(upper_index(l, k), i);
  }
  EXPECT_THROW(upper_index(2, 2), AlgebraError);
}

TEST(Pfaffian, UnitPfaffian) {
  auto R = Ring::make({"x1"}, {{1}});
  std::array<Polynomial, 10> up;
  for (auto& p : up) p = Polynomial(R);
  up[static_cast<std::size_t>(upper_index(2, 3))] = Polynomial::constant(R, 1);
  up[static_cast<std::size_t>(upper_index(4, 5))] = Polynomial::constant(R, 1);
  SkewMatrix5 M(R, WeightMatrix5{}, up);
  auto pf = maximal_pfaffians(M);
  EXPECT_EQ(pf[0], Polynomial::constant(R, 1));
  for (int i = 1; i < 5; ++i) EXPECT_TRUE(pf[static_cast<std::size_t>(i)].is_zero());
}

TEST(Pfaffian, InhomogeneousWeightsRejected) {
  WeightMatrix5 w{{1, 1, 1, 1, 1, 1, 1, 1, 1, 2}};
  EXPECT_FALSE(w.homogeneous());
  EXPECT_THROW(w.validate(), AlgebraError);
}

TEST(Pfaffian, EntryDegreeMismatchRejected) {
  auto c = fixtures::case_10985();
  c.entries[0] = "x1^2";
  EXPECT_THROW(fixtures::matrix(c), AlgebraError);
}

TEST(Pfaffian, Case10985Structure) {
  auto M = fixtures::matrix(fixtures::case_10985());
  auto pf = maximal_pfaffians(M);
  EXPECT_EQ(min_y_degree(pf[0]), 2);
  for (int i = 1; i < 5; ++i) {
    EXPECT_EQ(min_y_degree(pf[static_cast<std::size_t>(i)]), 1);
    EXPECT_EQ(bidegree_of(pf[static_cast<std::size_t>(i)]).top, M.weights().pfaffian_degree(i + 1));
  }
  for (const auto& s : syzygy_residual(M)) EXPECT_TRUE(s.is_zero());
  // Row-1 syzygy p1 Pf2 + ... + p4 Pf5 = 0 with the frozen signs.
  Polynomial row1(M.ring());
  for (int j = 2; j <= 5; ++j) row1 += M.entry(1, j) * pf[static_cast<std::size_t>(j - 1)];
  EXPECT_TRUE(row1.is_zero());
}

TEST(Pfaffian, CheckTom) {
  auto M = fixtures::matrix(fixtures::case_10985());
  EXPECT_TRUE(check_tom(M, TomFormat{1, {"y1", "y2", "y3", "y4"}}));
  EXPECT_FALSE(check_tom(M, TomFormat{3, {"y1", "y2", "y3", "y4"}}));
  auto R = M.ring();
  std::array<Polynomial, 10> zero;
  for (auto& p : zero) p = Polynomial(R);
  SkewMatrix5 Z(R, M.weights(), zero);
  for (int k = 1; k <= 5; ++k) EXPECT_TRUE(check_tom(Z, TomFormat{k, {"y1", "y2", "y3", "y4"}}));
  EXPECT_TRUE(check_tom(fixtures::matrix(fixtures::case_20652()), TomFormat{}));
  EXPECT_TRUE(check_tom(fixtures::matrix(fixtures::case_24097()), TomFormat{}));
}

TEST(Pfaffian, CheckTomMonotone) {
  auto c = fixtures::case_10985();
  auto M = fixtures::matrix(c);
  auto R = M.ring();
  auto up = M.upper();
  // a45 has weight 7: add x1*y1 and x2^4*y4.
  up[static_cast<std::size_t>(upper_index(4, 5))] += parse_polynomial("3*x1*y1 - x2^4*y4", R);
  SkewMatrix5 M2(R, M.weights(), up);
  EXPECT_TRUE(check_tom(M2, TomFormat{}));
  for (const auto& s : syzygy_residual(M2)) EXPECT_TRUE(s.is_zero());
}

TEST(Pfaffian, Quasilinearity10985) {
  auto rep = check_quasilinearity(fixtures::matrix(fixtures::case_10985()), TomFormat{});
  EXPECT_TRUE(has_occurrence(rep.ideal_linear, 2, 3, "y4"));
  EXPECT_TRUE(has_occurrence(rep.ideal_linear, 2, 4, "y3"));
  EXPECT_TRUE(has_occurrence(rep.ideal_linear, 2, 5, "y2"));
  EXPECT_TRUE(has_occurrence(rep.ideal_linear, 3, 5, "y1"));
  EXPECT_FALSE(rep.violation);
}

TEST(Pfaffian, Quasilinearity24097) {
  auto rep = check_quasilinearity(fixtures::matrix(fixtures::case_24097()), TomFormat{});
  EXPECT_TRUE(has_occurrence(rep.orbinate_linear, 1, 2, "x1"));
  EXPECT_TRUE(has_occurrence(rep.orbinate_linear, 1, 3, "x2"));
  EXPECT_TRUE(has_occurrence(rep.orbinate_linear, 1, 4, "x3"));
  EXPECT_FALSE(rep.violation);
}

TEST(Pfaffian, QuasilinearityViolation) {
  auto R = Ring::make({"x1", "x2", "x3", "y1", "y2", "y3", "y4"}, {{1, 1, 1, 1, 1, 1, 1}});
  std::array<std::string, 10> e{"x1", "x2", "x3", "x1", "y1^2", "y2^2", "y3^2", "y4^2", "y1*y2", "y3*y4"};
  std::array<Polynomial, 10> up;
  for (std::size_t i = 0; i < 10; ++i) up[i] = parse_polynomial(e[i], R);
  SkewMatrix5 M(R, WeightMatrix5{{1, 1, 1, 1, 2, 2, 2, 2, 2, 2}}, up);
  auto rep = check_quasilinearity(M, TomFormat{});
  EXPECT_TRUE(rep.ideal_linear.empty());
  EXPECT_TRUE(rep.violation);
}

TEST(Pfaffian, GeneralTomDeterministicSupport) {
  auto c = fixtures::case_10985();
  auto R = fixtures::z_ring(c);
  auto A = build_general_tom(c.w, TomFormat{}, R, 0);
  auto B = build_general_tom(c.w, TomFormat{}, R, 0);
  auto C = build_general_tom(c.w, TomFormat{}, R, 1);
  EXPECT_TRUE(check_tom(A, TomFormat{}));
  EXPECT_FALSE(check_quasilinearity(A, TomFormat{}).violation);
  bool coefficients_differ = false;
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(A.upper()[i], B.upper()[i]);
    ASSERT_EQ(A.upper()[i].size(), C.upper()[i].size());
    for (std::size_t j = 0; j < A.upper()[i].size(); ++j) {
      EXPECT_EQ(A.upper()[i].terms()[j].m, C.upper()[i].terms()[j].m);
      coefficients_differ = coefficients_differ || A.upper()[i].terms()[j].c != C.upper()[i].terms()[j].c;
    }
  }
  EXPECT_TRUE(coefficients_differ);
  // Lone y_j of matching weight carries coefficient 1.
  Monomial y1;
  y1.e[static_cast<std::size_t>(R->require_index("y1"))] = 1;
  EXPECT_EQ(A.entry(3, 5).coefficient(y1), 1);
}

TEST(Pfaffian, GeneralTomInfeasibleWeight) {
  auto R = Ring::make({"x1", "x2", "x3", "y1", "y2", "y3", "y4"}, {{1, 1, 1, 2, 2, 1, 1}});
  // m_kl = q_k + q_l with q = (0, 0, 0, 1, 1): a23 has weight 0.
  WeightMatrix5 w{{0, 0, 1, 1, 0, 1, 1, 1, 1, 2}};
  ASSERT_TRUE(w.homogeneous());
  EXPECT_THROW(build_general_tom(w, TomFormat{}, R, 0), AlgebraError);
}

class GeneralTomSyzygy : public ::testing::TestWithParam<int> {};

TEST_P(GeneralTomSyzygy, MTimesPfVanishes) {
  const auto cases = {fixtures::case_10985(), fixtures::case_20652(), fixtures::case_24097()};
  for (const auto& c : cases) {
    auto M = build_general_tom(c.w, TomFormat{}, fixtures::z_ring(c), static_cast<std::uint64_t>(GetParam()));
    for (const auto& s : syzygy_residual(M)) EXPECT_TRUE(s.is_zero());
    auto pf = maximal_pfaffians(M);
    EXPECT_GE(min_y_degree(pf[0]), 2);
    for (int i = 1; i < 5; ++i) {
      EXPECT_GE(min_y_degree(pf[static_cast<std::size_t>(i)]), 1);
      if (!pf[static_cast<std::size_t>(i)].is_zero())
        EXPECT_EQ(bidegree_of(pf[static_cast<std::size_t>(i)]).top, M.weights().pfaffian_degree(i + 1));
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, GeneralTomSyzygy, ::testing::Range(0, 6));

TEST(Pfaffian, PermutedToTomOne) {
  auto M = fixtures::matrix(fixtures::case_10985());
  std::array<int, 6> swap13{0, 3, 2, 1, 4, 5};
  auto P = M.permuted(swap13);
  EXPECT_TRUE(check_tom(P, TomFormat{3, {"y1", "y2", "y3", "y4"}}));
  EXPECT_FALSE(check_tom(P, TomFormat{1, {"y1", "y2", "y3", "y4"}}));
  EXPECT_TRUE(check_tom(P.permuted(swap13), TomFormat{}));
  for (const auto& s : syzygy_residual(P)) EXPECT_TRUE(s.is_zero());
}
