#include "tomlink/unprojection.hpp"

namespace tomlink {

Polynomial EntryDecomposition::get(int k, int l, int j, const RingPtr& ring) const {
  if (k > l) std::swap(k, l);
  auto it = alpha.find({k, l, j});
  return it == alpha.end() ? Polynomial(ring) : it->second;
}

EntryDecomposition decompose_entries(const SkewMatrix5& M, const TomFormat& fmt) {
  const RingPtr& R = M.ring();
  auto ys = ideal_indices(*R, fmt);
  if (ys.size() != 4) throw AlgebraError("Tom format needs four ideal generators");
  EntryDecomposition dec;
  for (int k = 1; k <= 5; ++k)
    for (int l = k + 1; l <= 5; ++l) {
      if (!is_constrained(k, l, fmt)) continue;
      std::array<PolynomialBuilder, 4> parts{PolynomialBuilder(R), PolynomialBuilder(R), PolynomialBuilder(R),
                                             PolynomialBuilder(R)};
      const Polynomial a = M.entry(k, l);
      for (const auto& t : a.terms()) {
        bool placed = false;
        for (std::size_t j = 0; j < 4 && !placed; ++j) {
          auto v = static_cast<std::size_t>(ys[j]);
          if (t.m.e[v] == 0) continue;
          Monomial q = t.m;
          --q.e[v];
          parts[j].add(q, t.c);
          placed = true;
        }
        if (!placed)
          throw AlgebraError("entry a" + std::to_string(k) + std::to_string(l) + " has the term " +
                             Polynomial::monomial(R, t.m, t.c).to_string() + " outside I_D");
      }
      for (std::size_t j = 0; j < 4; ++j) {
        Polynomial part = parts[j].build();
        if (!part.is_zero()) dec.alpha[{k, l, static_cast<int>(j) + 1}] = part;
      }
    }
  return dec;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& A, const RingPtr& ring) {
  const std::size_t n = A.size();
  if (n == 0) return Polynomial::constant(ring, 1);
  if (n == 1) return A[0][0];
  if (n == 2) return A[0][0] * A[1][1] - A[0][1] * A[1][0];
  Polynomial det(ring);
  for (std::size_t c = 0; c < n; ++c) {
    if (A[0][c].is_zero()) continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Polynomial> row;
      for (std::size_t cc = 0; cc < n; ++cc)
        if (cc != c) row.push_back(A[r][cc]);
      minor.push_back(std::move(row));
    }
    Polynomial term = A[0][c] * determinant(minor, ring);
    if (c % 2) det -= term;
    else det += term;
  }
  return det;
}

UnprojectionResult build_unprojection(const SkewMatrix5& M, const TomFormat& fmt, long s_weight) {
  if (!check_tom(M, fmt)) throw AlgebraError("matrix is not in Tom_" + std::to_string(fmt.k) + " format");
  const RingPtr& R = M.ring();
  UnprojectionResult res;
  res.M = M;
  res.fmt = fmt;
  res.r = s_weight;
  res.decomposition = decompose_entries(M, fmt);
  res.pf = maximal_pfaffians(M);
  auto ys = ideal_indices(*R, fmt);

  int n = 0;
  for (int i = 1; i <= 5; ++i)
    if (i != fmt.k) res.others[static_cast<std::size_t>(n++)] = i;
  for (std::size_t i = 0; i < 4; ++i) res.p[i] = M.entry(fmt.k, res.others[i]);

  for (int j = 1; j <= 4; ++j) {
    std::array<Polynomial, 10> up;
    WeightMatrix5 w;
    for (int k = 1; k <= 5; ++k)
      for (int l = k + 1; l <= 5; ++l) {
        auto idx = static_cast<std::size_t>(upper_index(k, l));
        if (is_constrained(k, l, fmt)) {
          up[idx] = res.decomposition.get(k, l, j, R);
          w.m[idx] = M.weights().m[idx] - R->weight(0, ys[static_cast<std::size_t>(j - 1)]);
        } else {
          up[idx] = M.entry(k, l);
          w.m[idx] = M.weights().m[idx];
        }
      }
    res.N[static_cast<std::size_t>(j - 1)] = SkewMatrix5(R, w, up);
  }
  for (std::size_t j = 0; j < 4; ++j) {
    auto pfN = maximal_pfaffians(res.N[j]);
    for (std::size_t i = 0; i < 4; ++i) res.Q[i][j] = pfN[static_cast<std::size_t>(res.others[i] - 1)];
  }
  // Q y must reproduce the pfaffians off the Tom index.
  for (std::size_t i = 0; i < 4; ++i) {
    Polynomial lhs(R);
    for (std::size_t j = 0; j < 4; ++j) lhs += res.Q[i][j] * Polynomial::variable(R, ys[j]);
    if (lhs != res.pf[static_cast<std::size_t>(res.others[i] - 1)])
      throw AlgebraError("Q y does not reproduce Pf_" + std::to_string(res.others[i]));
  }

  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      std::vector<std::vector<Polynomial>> minor;
      for (std::size_t a = 0; a < 4; ++a) {
        if (a == i) continue;
        std::vector<Polynomial> row;
        for (std::size_t b = 0; b < 4; ++b)
          if (b != j) row.push_back(res.Q[a][b]);
        minor.push_back(std::move(row));
      }
      Polynomial d = determinant(minor, R);
      res.H[i][j] = (i + j) % 2 ? -d : d;
    }

  bool have = false;
  for (std::size_t i = 0; i < 4; ++i) {
    if (res.p[i].is_zero()) continue;
    std::array<Polynomial, 4> gi;
    for (std::size_t j = 0; j < 4; ++j) {
      try {
        gi[j] = exact_divide(res.H[i][j], res.p[i]);
      } catch (const AlgebraError&) {
        throw AlgebraError("H_" + std::to_string(i + 1) + " is not divisible by p_" + std::to_string(i + 1) +
                           "; the unprojection data is degenerate");
      }
    }
    if (!have) {
      res.g = gi;
      have = true;
    } else if (gi != res.g) {
      throw AlgebraError("unprojection equations depend on the divisor index " + std::to_string(i + 1));
    }
    res.divisor_indices.push_back(static_cast<int>(i) + 1);
  }
  if (!have) throw AlgebraError("row " + std::to_string(fmt.k) + " of the matrix vanishes; no unprojection");

  if (R->index("s") >= 0) throw AlgebraError("the variable name s is reserved for the unprojection variable");
  std::vector<std::string> names{"s"};
  for (const auto& nm : R->names()) names.push_back(nm);
  std::vector<std::vector<long>> rows;
  for (int row = 0; row < R->rank(); ++row) {
    std::vector<long> w{row == 0 ? s_weight : 0};
    for (int v = 0; v < R->nvars(); ++v) w.push_back(R->weight(row, v));
    rows.push_back(w);
  }
  res.x_ring = Ring::make(names, rows);
  std::vector<Polynomial> gens;
  for (const auto& f : res.pf) gens.push_back(change_ring(f, res.x_ring));
  Polynomial s = Polynomial::variable(res.x_ring, "s");
  for (std::size_t j = 0; j < 4; ++j)
    gens.push_back(s * Polynomial::variable(res.x_ring, R->name(ys[j])) - change_ring(res.g[j], res.x_ring));
  res.X_ideal = Ideal(res.x_ring, gens);
  return res;
}

UnprojectionReport verify_unprojection(const UnprojectionResult& res, const VerifyOptions& opts) {
  UnprojectionReport rep;
  const RingPtr& R = res.M.ring();
  auto ys = ideal_indices(*R, res.fmt);
  for (std::size_t j = 0; j < 4; ++j) {
    long want = res.r + R->weight(0, ys[j]);
    const Polynomial& g = res.g[j];
    if (g.is_zero()) {
      rep.degrees_ok = false;
      rep.failures.push_back("g" + std::to_string(j + 1) + " vanishes");
      continue;
    }
    for (const auto& t : g.terms())
      if (bidegree_of_monomial(*R, t.m).top != want) {
        rep.degrees_ok = false;
        rep.failures.push_back("g" + std::to_string(j + 1) + " is not homogeneous of degree " + std::to_string(want));
        break;
      }
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j)
      for (std::size_t c = 0; c < 4; ++c)
        if (res.p[i] * res.H[j][c] != res.p[j] * res.H[i][c]) {
          rep.proportional_ok = false;
          rep.failures.push_back("p" + std::to_string(i + 1) + " H" + std::to_string(j + 1) + " != p" +
                                 std::to_string(j + 1) + " H" + std::to_string(i + 1));
          i = j = c = 4;
        }

  std::vector<Polynomial> pf(res.pf.begin(), res.pf.end());
  GroebnerBasis G = buchberger(Ideal(R, pf), MatrixOrder::weighted_grevlex(R->weights()[0]), opts.groebner);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      Polynomial c = Polynomial::variable(R, ys[i]) * res.g[j] - Polynomial::variable(R, ys[j]) * res.g[i];
      if (!G.contains(c)) {
        rep.consistency_ok = false;
        rep.failures.push_back("y" + std::to_string(i + 1) + " g" + std::to_string(j + 1) + " - y" +
                               std::to_string(j + 1) + " g" + std::to_string(i + 1) + " is not in the pfaffian ideal");
      }
    }

  if (opts.check_elimination) {
    rep.elimination_checked = true;
    Ideal E = eliminate(res.X_ideal, {"s"}, opts.groebner);
    GroebnerBasis GE = buchberger(E, MatrixOrder::grevlex(res.x_ring->nvars()), opts.groebner);
    for (std::size_t i = 0; i < 5; ++i)
      if (!GE.contains(change_ring(res.pf[i], res.x_ring))) {
        rep.elimination_ok = false;
        rep.failures.push_back("Pf" + std::to_string(i + 1) + " is missing from the s-eliminant");
      }
  }
  return rep;
}

}  // namespace tomlink
