#include "tomlink/pfaffian.hpp"

#include <sstream>

namespace tomlink {

int upper_index(int k, int l) {
  if (k > l) std::swap(k, l);
  if (k < 1 || l > 5 || k == l) throw AlgebraError("skew matrix index out of range");
  static const int base[5] = {0, 4, 7, 9, 10};
  return base[k - 1] + (l - k - 1);
}

std::pair<int, int> upper_pair(int idx) {
  for (int k = 1; k <= 5; ++k)
    for (int l = k + 1; l <= 5; ++l)
      if (upper_index(k, l) == idx) return {k, l};
  throw AlgebraError("skew matrix index out of range");
}

long WeightMatrix5::at(int k, int l) const { return m[static_cast<std::size_t>(upper_index(k, l))]; }

namespace {

std::array<int, 4> complement(int i) {
  std::array<int, 4> out{};
  int n = 0;
  for (int j = 1; j <= 5; ++j)
    if (j != i) out[static_cast<std::size_t>(n++)] = j;
  return out;
}

}  // namespace

bool WeightMatrix5::homogeneous() const {
  for (int i = 1; i <= 5; ++i) {
    auto c = complement(i);
    long a = at(c[0], c[1]) + at(c[2], c[3]);
    long b = at(c[0], c[2]) + at(c[1], c[3]);
    long d = at(c[0], c[3]) + at(c[1], c[2]);
    if (a != b || b != d) return false;
  }
  return true;
}

void WeightMatrix5::validate() const {
  if (!homogeneous()) throw AlgebraError("matrix weights do not give homogeneous pfaffians: " + to_string());
}

long WeightMatrix5::pfaffian_degree(int i) const {
  auto c = complement(i);
  return at(c[0], c[1]) + at(c[2], c[3]);
}

std::string WeightMatrix5::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? " " : "") << m[i];
  return os.str();
}

SkewMatrix5::SkewMatrix5(RingPtr ring, WeightMatrix5 weights, std::array<Polynomial, 10> upper)
    : ring_(std::move(ring)), weights_(weights), upper_(std::move(upper)) {
  weights_.validate();
  for (int idx = 0; idx < 10; ++idx) {
    Polynomial& p = upper_[static_cast<std::size_t>(idx)];
    if (!p.ring()) p = Polynomial(ring_);
    if (!same_ring(p.ring(), ring_)) throw AlgebraError("matrix entry lives in a different ring");
    if (p.is_zero()) continue;
    for (const auto& t : p.terms()) {
      long d = bidegree_of_monomial(*ring_, t.m).top;
      if (d != weights_.m[static_cast<std::size_t>(idx)]) {
        auto [k, l] = upper_pair(idx);
        throw AlgebraError("entry a" + std::to_string(k) + std::to_string(l) + " = " + p.to_string() +
                           " is not homogeneous of weight " + std::to_string(weights_.m[static_cast<std::size_t>(idx)]));
      }
    }
  }
}

Polynomial SkewMatrix5::entry(int k, int l) const {
  if (k == l) return Polynomial(ring_);
  const Polynomial& p = upper_[static_cast<std::size_t>(upper_index(k, l))];
  return k < l ? p : -p;
}

SkewMatrix5 SkewMatrix5::permuted(const std::array<int, 6>& perm) const {
  std::array<Polynomial, 10> up;
  WeightMatrix5 w;
  for (int k = 1; k <= 5; ++k)
    for (int l = k + 1; l <= 5; ++l) {
      int idx = upper_index(k, l);
      up[static_cast<std::size_t>(idx)] = entry(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(l)]);
      w.m[static_cast<std::size_t>(idx)] = weights_.at(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(l)]);
    }
  return SkewMatrix5(ring_, w, up);
}

std::string SkewMatrix5::to_string() const {
  std::ostringstream os;
  for (int k = 1; k <= 5; ++k) {
    for (int l = k + 1; l <= 5; ++l) os << (l == k + 1 ? "" : " | ") << entry(k, l).to_string();
    if (k < 4) os << "\n";
  }
  return os.str();
}

std::vector<int> ideal_indices(const Ring& ring, const TomFormat& fmt) {
  std::vector<int> out;
  for (const auto& n : fmt.ideal_vars) out.push_back(ring.require_index(n));
  return out;
}

bool in_ideal(const Polynomial& p, const std::vector<int>& vars) {
  for (const auto& t : p.terms()) {
    bool hit = false;
    for (int v : vars) hit = hit || t.m.e[static_cast<std::size_t>(v)] > 0;
    if (!hit) return false;
  }
  return true;
}

bool is_constrained(int k, int l, const TomFormat& fmt) { return k != fmt.k && l != fmt.k; }

std::array<Polynomial, 5> maximal_pfaffians(const SkewMatrix5& M) {
  std::array<Polynomial, 5> out;
  for (int i = 1; i <= 5; ++i) {
    auto c = complement(i);
    Polynomial pf = M.entry(c[0], c[1]) * M.entry(c[2], c[3]) - M.entry(c[0], c[2]) * M.entry(c[1], c[3]) +
                    M.entry(c[0], c[3]) * M.entry(c[1], c[2]);
    out[static_cast<std::size_t>(i - 1)] = (i % 2 == 1) ? pf : -pf;
  }
  return out;
}

std::array<Polynomial, 5> syzygy_residual(const SkewMatrix5& M) {
  auto pf = maximal_pfaffians(M);
  std::array<Polynomial, 5> out;
  for (int i = 1; i <= 5; ++i) {
    Polynomial s(M.ring());
    for (int j = 1; j <= 5; ++j) s += M.entry(i, j) * pf[static_cast<std::size_t>(j - 1)];
    out[static_cast<std::size_t>(i - 1)] = s;
  }
  return out;
}

bool check_tom(const SkewMatrix5& M, const TomFormat& fmt) {
  if (fmt.k < 1 || fmt.k > 5) throw AlgebraError("Tom index out of range");
  auto vars = ideal_indices(*M.ring(), fmt);
  for (int k = 1; k <= 5; ++k)
    for (int l = k + 1; l <= 5; ++l)
      if (is_constrained(k, l, fmt) && !in_ideal(M.entry(k, l), vars)) return false;
  return true;
}

namespace {

bool has_lone_variable(const Polynomial& p, int var) {
  Monomial m;
  m.e[static_cast<std::size_t>(var)] = 1;
  return p.coefficient(m) != 0;
}

}  // namespace

QuasilinearityReport check_quasilinearity(const SkewMatrix5& M, const TomFormat& fmt,
                                          const std::vector<std::string>& orbinates) {
  QuasilinearityReport rep;
  const Ring& R = *M.ring();
  auto ys = ideal_indices(R, fmt);
  std::vector<int> xs;
  for (const auto& n : orbinates) xs.push_back(R.require_index(n));
  std::size_t entries_with_y = 0;
  for (int k = 1; k <= 5; ++k)
    for (int l = k + 1; l <= 5; ++l) {
      Polynomial a = M.entry(k, l);
      if (is_constrained(k, l, fmt)) {
        bool any = false;
        for (int v : ys)
          if (has_lone_variable(a, v)) {
            rep.ideal_linear.push_back({k, l, R.name(v)});
            any = true;
          }
        if (any) ++entries_with_y;
      } else {
        for (int v : xs)
          if (has_lone_variable(a, v)) rep.orbinate_linear.push_back({k, l, R.name(v)});
      }
    }
  rep.violation = entries_with_y < 3 || rep.orbinate_linear.empty();
  return rep;
}

std::string QuasilinearityReport::to_string() const {
  std::ostringstream os;
  os << "ideal-linear:";
  for (const auto& o : ideal_linear) os << " " << o.var << "@a" << o.k << o.l;
  os << "; orbinate-linear:";
  for (const auto& o : orbinate_linear) os << " " << o.var << "@a" << o.k << o.l;
  if (violation) os << "; VIOLATION";
  return os.str();
}

SkewMatrix5 build_general_tom(const WeightMatrix5& weights, const TomFormat& fmt, const RingPtr& ambient,
                              std::uint64_t seed) {
  weights.validate();
  auto ys = ideal_indices(*ambient, fmt);
  auto in_id = [&](const Monomial& m) {
    for (int v : ys)
      if (m.e[static_cast<std::size_t>(v)]) return true;
    return false;
  };
  // Each y_j claims the first free constrained entry of weight d_j.
  std::array<int, 10> claimed;
  claimed.fill(-1);
  for (int v : ys)
    for (int idx = 0; idx < 10; ++idx) {
      auto [k, l] = upper_pair(idx);
      if (claimed[static_cast<std::size_t>(idx)] < 0 && is_constrained(k, l, fmt) &&
          weights.at(k, l) == ambient->weight(0, v)) {
        claimed[static_cast<std::size_t>(idx)] = v;
        break;
      }
    }
  std::array<Polynomial, 10> up;
  for (int k = 1; k <= 5; ++k)
    for (int l = k + 1; l <= 5; ++l) {
      int idx = upper_index(k, l);
      long deg = weights.at(k, l);
      bool constrained = is_constrained(k, l, fmt);
      Polynomial p;
      try {
        p = random_general(deg, ambient, constrained ? MonomialFilter(in_id) : MonomialFilter(), seed,
                           static_cast<std::uint64_t>(idx));
      } catch (const AlgebraError&) {
        throw AlgebraError("entry a" + std::to_string(k) + std::to_string(l) + " of weight " + std::to_string(deg) +
                           (constrained ? " admits no element of I_D" : " admits no monomial"));
      }
      if (int v = claimed[static_cast<std::size_t>(idx)]; v >= 0) {
        Monomial m;
        m.e[static_cast<std::size_t>(v)] = 1;
        PolynomialBuilder b(ambient);
        for (const auto& t : p.terms()) b.add(t.m, t.m == m ? Rational(1) : t.c);
        p = b.build();
      }
      up[static_cast<std::size_t>(idx)] = p;
    }
  return SkewMatrix5(ambient, weights, up);
}

}  // namespace tomlink
