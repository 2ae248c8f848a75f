#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "tomlink/algebra.hpp"

namespace tomlink {

namespace {

bool term_desc(const Term& a, const Term& b) { return b.m < a.m; }

void require_same(const Polynomial& a, const Polynomial& b) {
  if (!a.ring() || !b.ring()) return;
  if (!same_ring(a.ring(), b.ring())) throw AlgebraError("ring mismatch");
}

// Graded reverse lexicographic comparison on the top weight row.
bool display_before(const Ring& ring, const Monomial& a, const Monomial& b) {
  long da = 0, db = 0;
  for (int i = 0; i < ring.nvars(); ++i) {
    da += ring.weight(0, i) * a.e[i];
    db += ring.weight(0, i) * b.e[i];
  }
  if (da != db) return da > db;
  int ta = a.total_degree(), tb = b.total_degree();
  if (ta != tb) return ta > tb;
  for (int i = ring.nvars() - 1; i >= 0; --i)
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  return false;
}

}  // namespace

std::string rational_to_string(const Rational& c) {
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial Polynomial::constant(RingPtr ring, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, int index) {
  if (index < 0 || index >= ring->nvars()) throw AlgebraError("variable index out of range");
  Monomial m;
  m.e[static_cast<std::size_t>(index)] = 1;
  return monomial(std::move(ring), m, 1);
}

Polynomial Polynomial::variable(RingPtr ring, const std::string& name) {
  int i = ring->require_index(name);
  return variable(std::move(ring), i);
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, const Rational& c) {
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  PolynomialBuilder b(std::move(ring));
  for (auto& t : terms) b.add(t.m, t.c);
  return b.build();
}

void PolynomialBuilder::add(const Monomial& m, const Rational& c) {
  if (c != 0) terms_.push_back({m, c});
}

Polynomial PolynomialBuilder::build() {
  std::sort(terms_.begin(), terms_.end(), term_desc);
  Polynomial p(ring_);
  for (auto& t : terms_) {
    if (!p.terms_.empty() && p.terms_.back().m == t.m) {
      p.terms_.back().c += t.c;
      if (p.terms_.back().c == 0) p.terms_.pop_back();
    } else {
      p.terms_.push_back(std::move(t));
    }
  }
  terms_.clear();
  return p;
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return key < t.m; });
  if (it != terms_.end() && it->m == m) return it->c;
  return 0;
}

Rational Polynomial::constant_term() const { return coefficient(Monomial{}); }

int Polynomial::degree_in(int var) const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, int(t.m.e[static_cast<std::size_t>(var)]));
  return d;
}

int Polynomial::min_degree_in(int var) const {
  if (terms_.empty()) return -1;
  int d = 1 << 30;
  for (const auto& t : terms_) d = std::min(d, int(t.m.e[static_cast<std::size_t>(var)]));
  return d;
}

int Polynomial::total_degree() const {
  int d = -1;
  for (const auto& t : terms_) d = std::max(d, t.m.total_degree());
  return d;
}

bool Polynomial::involves(int var) const {
  for (const auto& t : terms_)
    if (t.m.e[static_cast<std::size_t>(var)]) return true;
  return false;
}

long Polynomial::weighted_degree(const Monomial& m, int row) const {
  long d = 0;
  for (int i = 0; i < ring_->nvars(); ++i) d += ring_->weight(row, i) * m.e[static_cast<std::size_t>(i)];
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.c = -t.c;
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same(*this, other);
  if (!ring_) ring_ = other.ring_;
  if (other.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() && j < other.terms_.size()) {
    const Monomial& a = terms_[i].m;
    const Monomial& b = other.terms_[j].m;
    if (a == b) {
      Rational c = terms_[i].c + other.terms_[j].c;
      if (c != 0) out.push_back({a, std::move(c)});
      ++i;
      ++j;
    } else if (b < a) {
      out.push_back(std::move(terms_[i++]));
    } else {
      out.push_back(other.terms_[j++]);
    }
  }
  for (; i < terms_.size(); ++i) out.push_back(std::move(terms_[i]));
  for (; j < other.terms_.size(); ++j) out.push_back(other.terms_[j]);
  terms_ = std::move(out);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same(a, b);
  RingPtr ring = a.ring_ ? a.ring_ : b.ring_;
  Polynomial r(ring);
  if (a.terms_.empty() || b.terms_.empty()) return r;
  if (a.terms_.size() == 1) return b.mul_monomial(a.terms_[0].m, a.terms_[0].c);
  if (b.terms_.size() == 1) return a.mul_monomial(b.terms_[0].m, b.terms_[0].c);
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) {
      auto [it, inserted] = acc.try_emplace(s.m * t.m, s.c * t.c);
      if (!inserted) it->second += s.c * t.c;
    }
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) r.terms_.push_back({m, std::move(c)});
  std::sort(r.terms_.begin(), r.terms_.end(), term_desc);
  return r;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.c *= c;
  return *this;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (!a.terms_.empty()) require_same(a, b);
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].m != b.terms_[i].m || a.terms_[i].c != b.terms_[i].c) return false;
  return true;
}

Polynomial Polynomial::mul_monomial(const Monomial& m, const Rational& c) const {
  Polynomial r(ring_);
  if (c == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.m * m, t.c * c});
  return r;
}

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

std::vector<Polynomial> Polynomial::coefficients_in(int var) const {
  int deg = degree_in(var);
  std::vector<PolynomialBuilder> builders;
  for (int k = 0; k <= deg; ++k) builders.emplace_back(ring_);
  for (const auto& t : terms_) {
    Monomial m = t.m;
    int k = m.e[static_cast<std::size_t>(var)];
    m.e[static_cast<std::size_t>(var)] = 0;
    builders[static_cast<std::size_t>(k)].add(m, t.c);
  }
  std::vector<Polynomial> out;
  for (auto& b : builders) out.push_back(b.build());
  return out;
}

Polynomial Polynomial::strip_power(int var, int* removed) const {
  int k = min_degree_in(var);
  if (k <= 0) {
    if (removed) *removed = 0;
    return *this;
  }
  Monomial m;
  m.e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(k);
  Polynomial r(ring_);
  for (const auto& t : terms_) r.terms_.push_back({t.m / m, t.c});
  if (removed) *removed = k;
  return r;
}

Polynomial Polynomial::filter(const std::function<bool(const Monomial&)>& keep) const {
  Polynomial r(ring_);
  for (const auto& t : terms_)
    if (keep(t.m)) r.terms_.push_back(t);
  return r;
}

Polynomial Polynomial::primitive() const {
  if (terms_.empty()) return *this;
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& t : terms_) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), t.c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), t.c.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  // Sign: make the display-leading coefficient positive.
  const Term* lead = &terms_[0];
  for (const auto& t : terms_)
    if (display_before(*ring_, t.m, lead->m)) lead = &t;
  if (lead->c < 0) scale = -scale;
  return *this * scale;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const Term*> order;
  order.reserve(terms_.size());
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [this](const Term* a, const Term* b) { return display_before(*ring_, a->m, b->m); });
  std::ostringstream os;
  bool first = true;
  for (const Term* t : order) {
    Rational c = t->c;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    bool unit = c == 1;
    bool wrote = false;
    if (!unit || t->m.is_one()) {
      os << rational_to_string(c);
      wrote = true;
    }
    for (int i = 0; i < ring_->nvars(); ++i) {
      int k = t->m.e[static_cast<std::size_t>(i)];
      if (!k) continue;
      if (wrote) os << "*";
      os << ring_->name(i);
      if (k > 1) os << "^" << k;
      wrote = true;
    }
  }
  return os.str();
}

Polynomial arith(const Polynomial& p, const Polynomial& q, ArithOp op) {
  if (!same_ring(p.ring(), q.ring())) throw AlgebraError("ring mismatch");
  switch (op) {
    case ArithOp::Add:
      return p + q;
    case ArithOp::Sub:
      return p - q;
    case ArithOp::Mul:
      return p * q;
  }
  throw AlgebraError("unknown operation");
}

bool divides(const Polynomial& q, const Polynomial& p, Polynomial* quotient) {
  if (q.is_zero()) throw AlgebraError("division by zero polynomial");
  if (!same_ring(p.ring(), q.ring())) throw AlgebraError("ring mismatch");
  // Division by a single polynomial under lex: {q} is a Groebner basis of (q).
  const Term& lead = q.terms()[0];
  Polynomial rest = p;
  PolynomialBuilder quot(p.ring());
  while (!rest.is_zero()) {
    const Term& t = rest.terms()[0];
    if (!lead.m.divides(t.m)) return false;
    Monomial m = t.m / lead.m;
    Rational c = t.c / lead.c;
    quot.add(m, c);
    rest -= q.mul_monomial(m, c);
  }
  if (quotient) *quotient = quot.build();
  return true;
}

Polynomial exact_divide(const Polynomial& p, const Polynomial& q) {
  Polynomial u;
  if (!divides(q, p, &u)) throw AlgebraError("division is not exact: " + q.to_string() + " does not divide the dividend");
  return u;
}

BiDegree bidegree_of(const Polynomial& p) {
  if (p.is_zero()) throw AlgebraError("zero polynomial has no degree");
  const Ring& ring = *p.ring();
  BiDegree d = bidegree_of_monomial(ring, p.terms()[0].m);
  for (const auto& t : p.terms())
    if (bidegree_of_monomial(ring, t.m) != d)
      throw AlgebraError("polynomial is not homogeneous: " + p.to_string());
  return d;
}

bool is_homogeneous(const Polynomial& p) {
  if (p.is_zero()) return true;
  try {
    bidegree_of(p);
    return true;
  } catch (const AlgebraError&) {
    return false;
  }
}

Polynomial substitute(const Polynomial& p, const RingPtr& target,
                      const std::map<std::string, Polynomial>& assignments) {
  const Ring& src = *p.ring();
  int n = src.nvars();
  std::vector<Polynomial> image(static_cast<std::size_t>(n));
  std::vector<bool> is_var(static_cast<std::size_t>(n), false);
  std::vector<int> var_index(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    auto it = assignments.find(src.name(i));
    if (it != assignments.end()) {
      if (!same_ring(it->second.ring(), target)) throw AlgebraError("assignment for " + src.name(i) + " lives in another ring");
      image[static_cast<std::size_t>(i)] = it->second;
      continue;
    }
    int j = target->index(src.name(i));
    if (j < 0) {
      bool used = false;
      for (const auto& t : p.terms()) used = used || t.m.e[static_cast<std::size_t>(i)];
      if (used) throw AlgebraError("variable " + src.name(i) + " has no image in the target ring");
      continue;
    }
    is_var[static_cast<std::size_t>(i)] = true;
    var_index[static_cast<std::size_t>(i)] = j;
  }
  // Power caches per variable.
  std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(n));
  auto power_of = [&](int i, int k) -> const Polynomial& {
    auto& cache = powers[static_cast<std::size_t>(i)];
    if (cache.empty()) cache.push_back(Polynomial::constant(target, 1));
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * image[static_cast<std::size_t>(i)]);
    return cache[static_cast<std::size_t>(k)];
  };
  std::vector<Polynomial> pieces;
  PolynomialBuilder simple(target);
  for (const auto& t : p.terms()) {
    Monomial mono;
    Polynomial factor = Polynomial::constant(target, t.c);
    bool complex = false;
    for (int i = 0; i < n; ++i) {
      int k = t.m.e[static_cast<std::size_t>(i)];
      if (!k) continue;
      if (is_var[static_cast<std::size_t>(i)]) {
        mono.e[static_cast<std::size_t>(var_index[static_cast<std::size_t>(i)])] =
            static_cast<std::uint16_t>(mono.e[static_cast<std::size_t>(var_index[static_cast<std::size_t>(i)])] + k);
      } else {
        factor = factor * power_of(i, k);
        complex = true;
        if (factor.is_zero()) break;
      }
    }
    if (!complex) {
      simple.add(mono, t.c);
    } else if (!factor.is_zero()) {
      pieces.push_back(factor.mul_monomial(mono, 1));
    }
  }
  Polynomial result = simple.build();
  if (pieces.empty()) return result;
  PolynomialBuilder all(target);
  for (const auto& t : result.terms()) all.add(t.m, t.c);
  for (const auto& piece : pieces)
    for (const auto& t : piece.terms()) all.add(t.m, t.c);
  return all.build();
}

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& assignments) {
  return substitute(p, p.ring(), assignments);
}

Polynomial change_ring(const Polynomial& p, const RingPtr& target) { return substitute(p, target, {}); }

}  // namespace tomlink
