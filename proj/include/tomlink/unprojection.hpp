#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "tomlink/groebner.hpp"
#include "tomlink/pfaffian.hpp"

namespace tomlink {

struct EntryDecomposition {
  // Key (k, l, j) with k < l a constrained entry and j = 1..4 the ideal generator.
  std::map<std::array<int, 3>, Polynomial> alpha;

  // Zero polynomial in `ring` when no coefficient is recorded.
  Polynomial get(int k, int l, int j, const RingPtr& ring) const;
};

// Greedy split a_kl = sum_j alpha^j_kl y_j: each term goes to the first y_j dividing it.
EntryDecomposition decompose_entries(const SkewMatrix5& M, const TomFormat& fmt);

struct UnprojectionResult {
  SkewMatrix5 M;
  TomFormat fmt;
  long r = 0;
  EntryDecomposition decomposition;
  std::array<int, 4> others{};  // the indices different from fmt.k, increasing
  std::array<Polynomial, 5> pf;
  std::array<Polynomial, 4> p;  // p_i = a_{k, others[i]}
  std::array<SkewMatrix5, 4> N;
  std::array<std::array<Polynomial, 4>, 4> Q;  // Q[i][j] = Pf_{others[i]}(N_j)
  // H[i][j] = (-1)^(i+j) det(Q without row i and column j).
  std::array<std::array<Polynomial, 4>, 4> H;
  std::array<Polynomial, 4> g;
  std::vector<int> divisor_indices;  // every i with p_i != 0, all agreeing on g
  RingPtr x_ring;                    // (s, ring of M) with s of weight r
  Ideal X_ideal;                     // Pf_1..Pf_5, s*y_j - g_j
};

UnprojectionResult build_unprojection(const SkewMatrix5& M, const TomFormat& fmt, long s_weight);

struct UnprojectionReport {
  bool degrees_ok = true;
  bool proportional_ok = true;  // p_i H_j = p_j H_i
  bool consistency_ok = true;   // y_i g_j - y_j g_i in <Pf>
  bool elimination_ok = true;   // <X> eliminating s contains every Pf_i
  bool elimination_checked = false;
  std::vector<std::string> failures;

  bool ok() const { return degrees_ok && proportional_ok && consistency_ok && elimination_ok; }
};

struct VerifyOptions {
  GroebnerOptions groebner;
  bool check_elimination = true;
};

UnprojectionReport verify_unprojection(const UnprojectionResult& res, const VerifyOptions& opts = {});

// Determinant by cofactor expansion; the matrix is square of size <= 4.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& A, const RingPtr& ring);

}  // namespace tomlink
