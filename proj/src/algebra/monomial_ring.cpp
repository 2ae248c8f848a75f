#include "tomlink/algebra.hpp"

#include <algorithm>
#include <sstream>

namespace tomlink {

int Monomial::total_degree() const {
  int d = 0;
  for (auto x : e) d += x;
  return d;
}

bool Monomial::is_one() const {
  for (auto x : e)
    if (x) return false;
  return true;
}

bool Monomial::divides(const Monomial& other) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] > other.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(e[i]) + other.e[i];
    if (s > 0xFFFFu) throw AlgebraError("monomial exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    if (other.e[i] > e[i]) throw AlgebraError("monomial division is not exact");
    r.e[i] = static_cast<std::uint16_t>(e[i] - other.e[i]);
  }
  return r;
}

Monomial Monomial::lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::max(a.e[i], b.e[i]);
  return r;
}

Monomial Monomial::gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = std::min(a.e[i], b.e[i]);
  return r;
}

bool Monomial::coprime(const Monomial& other) const {
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i] && other.e[i]) return false;
  return true;
}

std::uint64_t Monomial::support_mask() const {
  std::uint64_t mask = 0;
  for (int i = 0; i < kMaxVars; ++i)
    if (e[i]) mask |= (std::uint64_t{1} << i);
  return mask;
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  std::size_t h = 1469598103934665603ull;
  for (auto x : m.e) {
    h ^= x;
    h *= 1099511628211ull;
  }
  return h;
}

Ring::Ring(std::vector<std::string> names, std::vector<std::vector<long>> weight_rows)
    : names_(std::move(names)), rows_(std::move(weight_rows)) {
  if (names_.size() > static_cast<std::size_t>(kMaxVars))
    throw AlgebraError("too many variables (limit " + std::to_string(kMaxVars) + ")");
  if (rows_.empty() || rows_.size() > 2) throw AlgebraError("a ring needs one or two weight rows");
  for (const auto& row : rows_)
    if (row.size() != names_.size()) throw AlgebraError("weight row length differs from variable count");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw AlgebraError("empty variable name");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[i] == names_[j]) throw AlgebraError("duplicate variable name " + names_[i]);
  }
}

RingPtr Ring::make(std::vector<std::string> names, std::vector<std::vector<long>> weight_rows) {
  return std::make_shared<const Ring>(std::move(names), std::move(weight_rows));
}

int Ring::index(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

int Ring::require_index(const std::string& name) const {
  int i = index(name);
  if (i < 0) throw AlgebraError("unknown variable " + name);
  return i;
}

bool Ring::same_as(const Ring& other) const { return names_ == other.names_ && rows_ == other.rows_; }

std::string Ring::describe() const {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < names_.size(); ++i) os << (i ? "," : "") << names_[i];
  os << ")";
  for (const auto& row : rows_) {
    os << " [";
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "]";
  }
  return os.str();
}

bool same_ring(const RingPtr& a, const RingPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

std::string BiDegree::to_string() const {
  if (!has_bottom) return std::to_string(top);
  return "(" + std::to_string(top) + "," + std::to_string(bottom) + ")";
}

BiDegree bidegree_of_monomial(const Ring& ring, const Monomial& m) {
  BiDegree d;
  for (int i = 0; i < ring.nvars(); ++i) d.top += ring.weight(0, i) * m.e[i];
  if (ring.rank() == 2) {
    d.has_bottom = true;
    for (int i = 0; i < ring.nvars(); ++i) d.bottom += ring.weight(1, i) * m.e[i];
  }
  return d;
}

}  // namespace tomlink
