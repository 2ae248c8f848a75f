#pragma once

#include <cstddef>
#include <functional>
#include <memory>

#include "tomlink/algebra.hpp"

namespace tomlink {

class BudgetExceeded : public AlgebraError {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : AlgebraError("Groebner budget of " + std::to_string(budget) + " S-pair reductions exceeded"), budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

struct GroebnerOptions {
  std::size_t budget = 1000000;
};

inline constexpr int kMaxOrderRows = 12;
using OrderKey = std::array<std::int64_t, kMaxOrderRows>;

enum class TieBreak { Lex, RevLex };

// Monomials are compared by the weight rows in turn; remaining ties are broken
// lexicographically (or reverse-lexicographically) along `priority`.
class MatrixOrder {
 public:
  MatrixOrder() = default;
  MatrixOrder(int nvars, std::vector<std::vector<long>> rows, TieBreak tie = TieBreak::Lex,
              std::vector<int> priority = {});

  static MatrixOrder lex(int nvars);
  static MatrixOrder grevlex(int nvars);
  // Weighted degree first, then reverse lexicographic.
  static MatrixOrder weighted_grevlex(const std::vector<long>& weights);
  // Elimination order: degree in `block` first, then the inner order.
  static MatrixOrder block(const std::vector<int>& block, const MatrixOrder& inner);

  int nvars() const { return nvars_; }
  const std::vector<std::vector<long>>& rows() const { return rows_; }
  TieBreak tie_break() const { return tie_; }
  const std::vector<int>& priority() const { return priority_; }

  OrderKey key(const Monomial& m) const;
  // Positive when a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  int compare(const OrderKey& ka, const Monomial& a, const OrderKey& kb, const Monomial& b) const;
  std::string describe() const;

 private:
  int nvars_ = 0;
  std::vector<std::vector<long>> rows_;
  TieBreak tie_ = TieBreak::Lex;
  std::vector<int> priority_;
};

class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  bool is_zero() const { return gens_.empty(); }

 private:
  RingPtr ring_;
  std::vector<Polynomial> gens_;
};

namespace detail {
struct BasisData;
}

class GroebnerBasis {
 public:
  GroebnerBasis() = default;

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  const MatrixOrder& order() const { return order_; }
  bool reduced() const { return reduced_; }
  bool is_unit() const;
  std::vector<Monomial> leading_monomials() const;
  std::size_t pairs_reduced() const { return pairs_; }

  Polynomial normal_form(const Polynomial& p) const;
  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }
  bool contains(const Ideal& I) const;

 private:
  friend GroebnerBasis buchberger(const Ideal&, const MatrixOrder&, const GroebnerOptions&);
  RingPtr ring_;
  MatrixOrder order_;
  std::vector<Polynomial> elements_;
  bool reduced_ = false;
  std::size_t pairs_ = 0;
  std::shared_ptr<const detail::BasisData> data_;
};

GroebnerBasis buchberger(const Ideal& I, const MatrixOrder& order, const GroebnerOptions& opts = {});
Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G);
Polynomial leading_term(const Polynomial& p, const MatrixOrder& order);

// Orders on the ring extended by the auxiliary variable (placed first).
using OrderFactory = std::function<MatrixOrder(const RingPtr& extended)>;

// (I : v^oo) via an auxiliary variable z with v*z - 1 and an order eliminating z.
Ideal saturate(const Ideal& I, const std::string& var, const GroebnerOptions& opts = {});
Ideal saturate(const Ideal& I, const std::string& var, const OrderFactory& order, const GroebnerOptions& opts = {});
// Generators of I intersected with the subring in the remaining variables.
Ideal eliminate(const Ideal& I, const std::vector<std::string>& vars, const GroebnerOptions& opts = {});

// Ideal equality by mutual membership.
bool same_ideal(const Ideal& a, const Ideal& b, const GroebnerOptions& opts = {});

// Numerator N(t) of the Hilbert series N(t) / prod(1 - t^w_i) of R / <gens>.
std::vector<Integer> hilbert_numerator(std::vector<Monomial> gens, const std::vector<long>& weights);

struct HilbertData {
  std::vector<Integer> numerator;
  int krull_dimension = 0;  // -1 for the unit ideal
  Rational degree;
};
HilbertData hilbert_data(const GroebnerBasis& G, const std::vector<long>& weights);

struct ZeroDimOptions {
  GroebnerOptions groebner;
  std::uint64_t seed = 0;
  bool cross_check = true;
};

// Length of the finite subscheme of P(weights) cut out by a homogeneous ideal.
// Only unit weights are supported.
long zero_dim_degree(const Ideal& I, const std::vector<long>& projective_weights, const ZeroDimOptions& opts = {});

}  // namespace tomlink
