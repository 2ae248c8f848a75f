#include <gtest/gtest.h>

#include "tomlink/groebner.hpp"

using namespace tomlink;

namespace {

RingPtr ring3() { return Ring::make({"x1", "x2", "y1"}, {{1, 1, 1}}); }

Polynomial P(const std::string& s, const RingPtr& R) { return parse_polynomial(s, R); }

// Independent membership oracle: solve g = sum c_i f_i with cofactors of bounded
// degree by Gaussian elimination over Q.
bool member_by_linear_algebra(const Polynomial& g, const std::vector<Polynomial>& F, int bound) {
  const RingPtr& R = g.ring();
  std::vector<std::pair<std::size_t, Monomial>> cols;
  for (std::size_t i = 0; i < F.size(); ++i) {
    int df = F[i].total_degree();
    for (int d = 0; d + df <= bound; ++d) {
      auto unit = Ring::make(R->names(), {std::vector<long>(static_cast<std::size_t>(R->nvars()), 1)});
      for (const auto& m : monomials_of_degree(*unit, d)) cols.push_back({i, m});
    }
  }
  std::map<Monomial, std::size_t> row_of;
  auto row = [&](const Monomial& m) {
    auto it = row_of.find(m);
    if (it != row_of.end()) return it->second;
    std::size_t r = row_of.size();
    row_of.emplace(m, r);
    return r;
  };
  std::vector<std::map<std::size_t, Rational>> A(cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (const auto& t : F[cols[c].first].terms()) A[c][row(t.m * cols[c].second)] += t.c;
  std::map<std::size_t, Rational> b;
  for (const auto& t : g.terms()) b[row(t.m)] += t.c;
  std::size_t nr = row_of.size();
  std::vector<std::vector<Rational>> M(nr, std::vector<Rational>(cols.size() + 1, Rational(0)));
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (auto& [r, v] : A[c]) M[r][c] = v;
  for (auto& [r, v] : b) M[r][cols.size()] = v;
  std::size_t pr = 0;
  for (std::size_t c = 0; c < cols.size() && pr < nr; ++c) {
    std::size_t piv = pr;
    while (piv < nr && M[piv][c] == 0) ++piv;
    if (piv == nr) continue;
    std::swap(M[piv], M[pr]);
    for (std::size_t r = 0; r < nr; ++r) {
      if (r == pr || M[r][c] == 0) continue;
      Rational f = M[r][c] / M[pr][c];
      for (std::size_t k = c; k <= cols.size(); ++k) M[r][k] -= f * M[pr][k];
    }
    ++pr;
  }
  for (std::size_t r = pr; r < nr; ++r)
    if (M[r][cols.size()] != 0) return false;
  return true;
}

}  // namespace

TEST(Order, GrevlexAndLex) {
  auto R = ring3();
  Monomial a = P("x1*y1", R).terms()[0].m, b = P("x2^2", R).terms()[0].m;
  EXPECT_GT(MatrixOrder::lex(3).compare(a, b), 0);
  EXPECT_GT(MatrixOrder::grevlex(3).compare(b, a), 0);
  EXPECT_THROW(MatrixOrder(2, {{-1, 1}}), AlgebraError);
}

TEST(Buchberger, MonomialIdeal) {
  auto R = ring3();
  GroebnerBasis G = buchberger(Ideal(R, {P("x1", R), P("x2", R)}), MatrixOrder::grevlex(3));
  ASSERT_EQ(G.elements().size(), 2u);
  EXPECT_TRUE(G.reduced());
}

TEST(Buchberger, HandExample) {
  auto R = ring3();
  std::vector<Polynomial> F{P("x1^2 - y1", R), P("x1^3", R)};
  GroebnerBasis G = buchberger(Ideal(R, F), MatrixOrder::grevlex(3));
  auto has = [&](const Polynomial& p) {
    for (const auto& g : G.elements())
      if (g == p) return true;
    return false;
  };
  EXPECT_TRUE(has(P("x1*y1", R)));
  EXPECT_TRUE(has(P("y1^2", R)));
  for (const auto& f : F) EXPECT_TRUE(G.contains(f));
  for (const auto& g : G.elements()) EXPECT_TRUE(member_by_linear_algebra(g, F, 4));
}

TEST(Buchberger, Principal) {
  auto R = ring3();
  GroebnerBasis G = buchberger(Ideal(R, {P("2*x1^2 + 4*x2*y1", R)}), MatrixOrder::grevlex(3));
  ASSERT_EQ(G.elements().size(), 1u);
  EXPECT_EQ(G.elements()[0], P("x1^2 + 2*x2*y1", R));
}

TEST(Buchberger, UnitIdealAndBudget) {
  auto R = ring3();
  EXPECT_TRUE(buchberger(Ideal(R, {P("x1 - 1", R), P("x1", R)}), MatrixOrder::grevlex(3)).is_unit());
  GroebnerOptions tiny;
  tiny.budget = 0;
  EXPECT_THROW(buchberger(Ideal(R, {P("x1^2 - y1", R), P("x1^3", R)}), MatrixOrder::grevlex(3), tiny),
               BudgetExceeded);
}

TEST(NormalForm, Basics) {
  auto R = ring3();
  GroebnerBasis G = buchberger(Ideal(R, {P("x1", R)}), MatrixOrder::grevlex(3));
  EXPECT_EQ(normal_form(Polynomial::constant(R, 1), G), Polynomial::constant(R, 1));
  EXPECT_TRUE(normal_form(P("x1", R), G).is_zero());
  EXPECT_EQ(normal_form(P("x1*x2 + y1", R), G), P("y1", R));
}

TEST(Saturate, Examples) {
  auto R = Ring::make({"t", "x1", "x2"}, {{1, 1, 1}});
  Ideal sat = saturate(Ideal(R, {P("t*x1", R)}), "t");
  ASSERT_EQ(sat.size(), 1u);
  EXPECT_EQ(sat.generators()[0], P("x1", R));
  Ideal free_of_t(R, {P("x1^2 - x2", R)});
  EXPECT_TRUE(same_ideal(saturate(free_of_t, "t"), free_of_t));
}

TEST(Eliminate, Examples) {
  auto R = Ring::make({"s", "x1", "y1"}, {{2, 1, 1}});
  EXPECT_TRUE(eliminate(Ideal(R, {P("s*y1 - x1^3", R)}), {"s"}).is_zero());
  Ideal I(R, {P("s*y1 - x1^3", R), P("s - x1^2", R)});
  Ideal E = eliminate(I, {"s"});
  for (const auto& g : E.generators()) EXPECT_FALSE(g.involves(0));
  GroebnerBasis GE = buchberger(E, MatrixOrder::grevlex(3));
  EXPECT_TRUE(GE.contains(P("x1^2*y1 - x1^3", R)));
  EXPECT_TRUE(same_ideal(eliminate(I, {}), I));
}

TEST(Hilbert, Numerators) {
  auto R = ring3();
  Monomial x1 = P("x1", R).terms()[0].m, x2 = P("x2", R).terms()[0].m;
  auto N = hilbert_numerator({x1 * x2}, {1, 1, 1});
  ASSERT_EQ(N.size(), 3u);
  EXPECT_EQ(N[0], 1);
  EXPECT_EQ(N[1], 0);
  EXPECT_EQ(N[2], -1);
}

TEST(ZeroDimDegree, Examples) {
  auto R = ring3();
  EXPECT_EQ(zero_dim_degree(Ideal(R, {P("x1", R), P("x2", R)}), {1, 1, 1}), 1);
  EXPECT_EQ(zero_dim_degree(Ideal(R, {P("x1*x2", R), P("y1", R)}), {1, 1, 1}), 2);
  EXPECT_EQ(zero_dim_degree(Ideal(R, {P("x1^2", R), P("x2", R)}), {1, 1, 1}), 2);
  EXPECT_EQ(zero_dim_degree(Ideal(R, {P("x1", R), P("x2", R), P("y1", R)}), {1, 1, 1}), 0);
  EXPECT_THROW(zero_dim_degree(Ideal(R, {P("x1", R)}), {1, 1, 1}), AlgebraError);
  EXPECT_THROW(zero_dim_degree(Ideal(R, {P("x1", R), P("x2", R)}), {1, 1, 2}), AlgebraError);
}

class RandomIdeals : public ::testing::TestWithParam<int> {};

TEST_P(RandomIdeals, BasisGeneratesSameIdeal) {
  auto R = ring3();
  std::uint64_t seed = static_cast<std::uint64_t>(GetParam());
  std::vector<Polynomial> F{random_general(2, R, nullptr, seed, 1), random_general(2, R, nullptr, seed, 2)};
  GroebnerBasis G = buchberger(Ideal(R, F), MatrixOrder::grevlex(3));
  for (const auto& f : F) EXPECT_TRUE(G.contains(f));
  for (const auto& g : G.elements()) EXPECT_TRUE(member_by_linear_algebra(g, F, 5));
  GroebnerBasis L = buchberger(Ideal(R, F), MatrixOrder::lex(3));
  for (const auto& g : L.elements()) EXPECT_TRUE(G.contains(g));
  for (const auto& g : G.elements()) EXPECT_TRUE(L.contains(g));
}

TEST_P(RandomIdeals, SaturationProperties) {
  auto R = Ring::make({"t", "x1", "x2"}, {{1, 1, 1}});
  std::uint64_t seed = static_cast<std::uint64_t>(GetParam());
  Polynomial f = random_general(1, R, nullptr, seed, 3) * P("t", R);
  Polynomial g = random_general(2, R, nullptr, seed, 4);
  Ideal I(R, {f, g});
  Ideal S = saturate(I, "t");
  GroebnerBasis GS = buchberger(S, MatrixOrder::grevlex(3));
  EXPECT_TRUE(GS.contains(I));
  EXPECT_TRUE(same_ideal(saturate(S, "t"), S));
}

INSTANTIATE_TEST_SUITE_P(Seeds, RandomIdeals, ::testing::Range(0, 6));
