#pragma once

#include <array>
#include <string>
#include <vector>

#include "tomlink/algebra.hpp"

namespace tomlink {

// Index of the upper-triangle entry (k,l), 1 <= k < l <= 5, in row-major order.
int upper_index(int k, int l);
std::pair<int, int> upper_pair(int idx);

struct WeightMatrix5 {
  std::array<long, 10> m{};

  long at(int k, int l) const;
  // True when m_ij + m_kl depends only on {i,j,k,l} for every 4-subset.
  bool homogeneous() const;
  void validate() const;
  // Degree of Pf_i, i = 1..5 (index 0 unused).
  long pfaffian_degree(int i) const;
  std::string to_string() const;

  friend bool operator==(const WeightMatrix5& a, const WeightMatrix5& b) { return a.m == b.m; }
};

class SkewMatrix5 {
 public:
  SkewMatrix5() = default;
  // Validates homogeneity of every nonzero entry against the top weight row.
  SkewMatrix5(RingPtr ring, WeightMatrix5 weights, std::array<Polynomial, 10> upper);

  const RingPtr& ring() const { return ring_; }
  const WeightMatrix5& weights() const { return weights_; }
  const std::array<Polynomial, 10>& upper() const { return upper_; }
  // Skew accessor, 1-based.
  Polynomial entry(int k, int l) const;
  // Simultaneous permutation of rows and columns: new (i,j) = old (perm[i], perm[j]).
  SkewMatrix5 permuted(const std::array<int, 6>& perm) const;
  std::string to_string() const;

 private:
  RingPtr ring_;
  WeightMatrix5 weights_;
  std::array<Polynomial, 10> upper_;
};

struct TomFormat {
  int k = 1;
  std::vector<std::string> ideal_vars{"y1", "y2", "y3", "y4"};
};

// Index list of the I_D generators; throws when a name is missing from the ring.
std::vector<int> ideal_indices(const Ring& ring, const TomFormat& fmt);
bool in_ideal(const Polynomial& p, const std::vector<int>& ideal_vars);
// Entries avoiding row and column k.
bool is_constrained(int k, int l, const TomFormat& fmt);

// Pf_i carries the sign (-1)^(i+1) on the 4x4 pfaffian with row and column i deleted,
// so that M * (Pf_1, ..., Pf_5)^T = 0.
std::array<Polynomial, 5> maximal_pfaffians(const SkewMatrix5& M);
// The five entries of M * Pf.
std::array<Polynomial, 5> syzygy_residual(const SkewMatrix5& M);

bool check_tom(const SkewMatrix5& M, const TomFormat& fmt);

struct EntryOccurrence {
  int k = 0, l = 0;
  std::string var;
};

struct QuasilinearityReport {
  std::vector<EntryOccurrence> ideal_linear;     // y_j as a lone term of a constrained entry
  std::vector<EntryOccurrence> orbinate_linear;  // x_j as a lone term in row/column k
  bool violation = false;
  std::string to_string() const;
};

QuasilinearityReport check_quasilinearity(const SkewMatrix5& M, const TomFormat& fmt,
                                          const std::vector<std::string>& orbinates = {"x1", "x2", "x3"});

// Seeded general member of the Tom family with the given weights.
SkewMatrix5 build_general_tom(const WeightMatrix5& weights, const TomFormat& fmt, const RingPtr& ambient,
                              std::uint64_t seed);

}  // namespace tomlink
