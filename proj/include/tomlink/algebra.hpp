#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tomlink {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr int kMaxVars = 16;

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};

  int total_degree() const;
  bool is_one() const;
  bool divides(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  // Requires divisibility; throws otherwise.
  Monomial operator/(const Monomial& other) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);
  static Monomial gcd(const Monomial& a, const Monomial& b);
  bool coprime(const Monomial& other) const;
  std::uint64_t support_mask() const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return a.e != b.e; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.e < b.e; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Ordered variable names with one or two integer weight rows.
class Ring {
 public:
  Ring(std::vector<std::string> names, std::vector<std::vector<long>> weight_rows);

  static RingPtr make(std::vector<std::string> names, std::vector<std::vector<long>> weight_rows);

  int nvars() const { return static_cast<int>(names_.size()); }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::vector<long>>& weights() const { return rows_; }
  long weight(int row, int var) const { return rows_.at(static_cast<std::size_t>(row)).at(static_cast<std::size_t>(var)); }
  // -1 when absent.
  int index(const std::string& name) const;
  int require_index(const std::string& name) const;
  bool same_as(const Ring& other) const;
  std::string describe() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<long>> rows_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);

struct BiDegree {
  long top = 0;
  long bottom = 0;
  bool has_bottom = false;

  friend bool operator==(const BiDegree& a, const BiDegree& b) {
    return a.top == b.top && a.has_bottom == b.has_bottom && (!a.has_bottom || a.bottom == b.bottom);
  }
  friend bool operator!=(const BiDegree& a, const BiDegree& b) { return !(a == b); }
  std::string to_string() const;
};

struct Term {
  Monomial m;
  Rational c;
};

// Sparse polynomial with exact rational coefficients. Terms are kept sorted
// by descending lexicographic exponent order, without zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, const Rational& c);
  static Polynomial variable(RingPtr ring, int index);
  static Polynomial variable(RingPtr ring, const std::string& name);
  static Polynomial monomial(RingPtr ring, const Monomial& m, const Rational& c = 1);
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool is_constant() const;
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const;

  int degree_in(int var) const;
  int min_degree_in(int var) const;
  int total_degree() const;
  bool involves(int var) const;
  // Weighted degree of a monomial under the given weight row.
  long weighted_degree(const Monomial& m, int row) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial mul_monomial(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned n) const;
  // Collect terms by the power of `var`; index k holds the coefficient of var^k.
  std::vector<Polynomial> coefficients_in(int var) const;
  // Divide every term by the largest power of `var` dividing all terms.
  Polynomial strip_power(int var, int* removed = nullptr) const;
  // Keep only the terms accepted by the predicate.
  Polynomial filter(const std::function<bool(const Monomial&)>& keep) const;
  // Multiply by the lcm of denominators divided by the gcd of numerators so the
  // result has coprime integer coefficients and positive display-leading coefficient.
  Polynomial primitive() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
  friend class PolynomialBuilder;
};

// Accumulates terms and normalizes once.
class PolynomialBuilder {
 public:
  explicit PolynomialBuilder(RingPtr ring) : ring_(std::move(ring)) {}
  void add(const Monomial& m, const Rational& c);
  Polynomial build();

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

enum class ArithOp { Add, Sub, Mul };

Polynomial parse_polynomial(const std::string& text, const RingPtr& ring);
Polynomial arith(const Polynomial& p, const Polynomial& q, ArithOp op);

// Returns u with u*q == p; throws AlgebraError when q does not divide p.
Polynomial exact_divide(const Polynomial& p, const Polynomial& q);
bool divides(const Polynomial& q, const Polynomial& p, Polynomial* quotient = nullptr);

// Common (bi)degree of all terms; throws AlgebraError on zero or inhomogeneous input.
BiDegree bidegree_of(const Polynomial& p);
bool is_homogeneous(const Polynomial& p);
BiDegree bidegree_of_monomial(const Ring& ring, const Monomial& m);

// Simultaneous substitution into a polynomial of `target`. Variables without an
// assignment are mapped to the variable of the same name in `target`.
Polynomial substitute(const Polynomial& p, const RingPtr& target,
                      const std::map<std::string, Polynomial>& assignments);
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& assignments);
// Same-name embedding into another ring.
Polynomial change_ring(const Polynomial& p, const RingPtr& target);

struct WellFormResult {
  RingPtr ring;
  // new_rows = transform * old_rows, with rational entries.
  std::array<std::array<Rational, 2>, 2> transform;
};

// Row-reduce a rank-2 grading. Without a pivot the top row is kept and the bottom
// row is replaced by the primitive lattice vector of least L1 norm completing it.
// With a pivot variable the top row is replaced by the primitive combination that
// vanishes on the pivot, keeping the bottom row.
WellFormResult well_form(const RingPtr& ring);
WellFormResult well_form(const RingPtr& ring, int pivot);

// Deterministic generator of small nonzero integers in [-9, 9] \ {0}.
class CoefficientStream {
 public:
  explicit CoefficientStream(std::uint64_t seed, std::uint64_t stream = 0);
  long next();
  std::uint64_t next_raw();

 private:
  std::uint64_t state_;
};

using MonomialFilter = std::function<bool(const Monomial&)>;

// All monomials of a given (bi)degree; requires strictly positive top weights.
std::vector<Monomial> monomials_of_degree(const Ring& ring, long top_degree);
Polynomial random_general(long degree, const RingPtr& ring, const MonomialFilter& admissible,
                          std::uint64_t seed, std::uint64_t stream = 0);
Polynomial random_general(const BiDegree& degree, const RingPtr& ring, const MonomialFilter& admissible,
                          std::uint64_t seed, std::uint64_t stream = 0);

std::string rational_to_string(const Rational& c);

}  // namespace tomlink
