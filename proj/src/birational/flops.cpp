#include <algorithm>

#include "tomlink/birational.hpp"

namespace tomlink {

namespace {

Rational evaluate(const Polynomial& p, const std::vector<Rational>& at) {
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.c;
    for (std::size_t i = 0; i < at.size(); ++i)
      for (int k = 0; k < t.m.e[i]; ++k) v *= at[i];
    sum += v;
  }
  return sum;
}

int rank_of(std::vector<std::vector<Rational>> A) {
  int rank = 0;
  const std::size_t rows = A.size(), cols = rows ? A[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[static_cast<std::size_t>(rank)]);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == static_cast<std::size_t>(rank) || A[r][c] == 0) continue;
      Rational f = A[r][c] / A[static_cast<std::size_t>(rank)][c];
      for (std::size_t k = c; k < cols; ++k) A[r][k] -= f * A[static_cast<std::size_t>(rank)][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<Polynomial> minors(const std::vector<std::vector<Polynomial>>& A, std::size_t size, const RingPtr& R) {
  std::vector<Polynomial> out;
  const std::size_t n = A.size();
  std::vector<std::vector<std::size_t>> subsets;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    subsets.push_back(s);
  }
  for (const auto& rows : subsets)
    for (const auto& cols : subsets) {
      std::vector<std::vector<Polynomial>> sub;
      for (auto r : rows) {
        std::vector<Polynomial> row;
        for (auto c : cols) row.push_back(A[r][c]);
        sub.push_back(row);
      }
      Polynomial d = determinant(sub, R);
      if (!d.is_zero()) out.push_back(d);
    }
  return out;
}

}  // namespace

FlopAnalysis count_flops(const SkewMatrix5& M, const TomFormat& fmt, const FlopOptions& opts) {
  const RingPtr& R = M.ring();
  auto ys = ideal_indices(*R, fmt);
  std::vector<std::string> xs;
  std::vector<long> xw;
  for (int v = 0; v < R->nvars(); ++v)
    if (std::find(ys.begin(), ys.end(), v) == ys.end()) {
      xs.push_back(R->name(v));
      xw.push_back(R->weight(0, v));
    }
  FlopAnalysis out;
  out.d_ring = Ring::make(xs, {xw});
  const RingPtr& D = out.d_ring;
  auto pf = maximal_pfaffians(M);
  out.A.assign(4, std::vector<Polynomial>());
  for (std::size_t i = 0; i < 4; ++i) {
    for (int j = 1; j <= 5; ++j) {
      if (j == fmt.k) continue;
      PolynomialBuilder b(D);
      for (const auto& t : pf[static_cast<std::size_t>(j - 1)].terms()) {
        int ydeg = 0;
        for (int y : ys) ydeg += t.m.e[static_cast<std::size_t>(y)];
        if (ydeg != 1 || t.m.e[static_cast<std::size_t>(ys[i])] != 1) continue;
        Monomial m;
        for (std::size_t k = 0; k < xs.size(); ++k) m.e[k] = t.m.e[static_cast<std::size_t>(R->require_index(xs[k]))];
        b.add(m, t.c);
      }
      out.A[i].push_back(b.build());
    }
  }
  out.det_vanishes = determinant(out.A, D).is_zero();
  auto m3 = minors(out.A, 3, D);
  if (m3.empty()) throw AlgebraError("all 3x3 minors of A vanish; the member is degenerate");
  ZeroDimOptions zo;
  zo.groebner = opts.groebner;
  zo.seed = opts.seed;
  try {
    out.count = zero_dim_degree(Ideal(D, m3), xw, zo);
  } catch (const BudgetExceeded&) {
    throw;
  } catch (const AlgebraError& e) {
    throw AlgebraError(std::string("node locus of A: ") + e.what());
  }
  auto m2 = minors(out.A, 2, D);
  std::vector<Polynomial> low = m3;
  low.insert(low.end(), m2.begin(), m2.end());
  out.rank_at_least_two = zero_dim_degree(Ideal(D, low), xw, zo) == 0;
  std::vector<Polynomial> on_x1 = m3;
  on_x1.push_back(Polynomial::variable(D, 0));
  out.nodes_on_x1 = zero_dim_degree(Ideal(D, on_x1), xw, zo);

  CoefficientStream rng(opts.seed, 77);
  for (int s = 0; s < opts.samples; ++s) {
    std::vector<Rational> at;
    for (std::size_t k = 0; k < xs.size(); ++k) at.push_back(Rational(rng.next()));
    std::vector<std::vector<Rational>> Ap(4, std::vector<Rational>(4));
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) Ap[i][j] = evaluate(out.A[i][j], at);
    int rk = rank_of(Ap);
    out.sample_ranks.push_back(rk);
    ++out.samples;
    if (rk == 3) ++out.samples_rank_three;
  }
  return out;
}

}  // namespace tomlink
