#include <optional>
#include <algorithm>

#include "tomlink/groebner.hpp"

namespace tomlink {

namespace {

std::string fresh_name(const Ring& ring, std::string base) {
  while (ring.index(base) >= 0) base += "_";
  return base;
}

}  // namespace

Ideal saturate(const Ideal& I, const std::string& var, const GroebnerOptions& opts) {
  return saturate(
      I, var, [](const RingPtr& ext) { return MatrixOrder::block({0}, MatrixOrder::grevlex(ext->nvars())); }, opts);
}

Ideal saturate(const Ideal& I, const std::string& var, const OrderFactory& order, const GroebnerOptions& opts) {
  const RingPtr& R = I.ring();
  int v = R->require_index(var);
  std::vector<std::string> names{fresh_name(*R, "z")};
  for (const auto& n : R->names()) names.push_back(n);
  std::vector<std::vector<long>> rows;
  for (int row = 0; row < R->rank(); ++row) {
    std::vector<long> w{-R->weight(row, v)};
    for (int i = 0; i < R->nvars(); ++i) w.push_back(R->weight(row, i));
    rows.push_back(w);
  }
  RingPtr ext = Ring::make(names, rows);
  std::vector<Polynomial> gens;
  for (const auto& g : I.generators()) gens.push_back(change_ring(g, ext));
  Polynomial vz = Polynomial::variable(ext, 0) * Polynomial::variable(ext, var);
  gens.push_back(vz - Polynomial::constant(ext, 1));
  GroebnerBasis G = buchberger(Ideal(ext, gens), order(ext), opts);
  std::vector<Polynomial> out;
  for (const auto& g : G.elements())
    if (!g.involves(0)) out.push_back(change_ring(g, R));
  return Ideal(R, out);
}

Ideal eliminate(const Ideal& I, const std::vector<std::string>& vars, const GroebnerOptions& opts) {
  const RingPtr& R = I.ring();
  if (vars.empty()) return I;
  std::vector<int> idx;
  for (const auto& v : vars) idx.push_back(R->require_index(v));
  GroebnerBasis G = buchberger(I, MatrixOrder::block(idx, MatrixOrder::grevlex(R->nvars())), opts);
  std::vector<Polynomial> out;
  for (const auto& g : G.elements()) {
    bool free = true;
    for (int v : idx) free = free && !g.involves(v);
    if (free) out.push_back(g);
  }
  return Ideal(R, out);
}

bool same_ideal(const Ideal& a, const Ideal& b, const GroebnerOptions& opts) {
  MatrixOrder o = MatrixOrder::grevlex(a.ring()->nvars());
  return buchberger(a, o, opts).contains(b) && buchberger(b, o, opts).contains(a);
}

namespace {

using Series = std::vector<Integer>;

void trim(Series& s) {
  while (!s.empty() && s.back() == 0) s.pop_back();
}

Series mul(const Series& a, const Series& b) {
  if (a.empty() || b.empty()) return {};
  Series r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

void add_shifted(Series& a, const Series& b, std::size_t shift) {
  if (a.size() < b.size() + shift) a.resize(b.size() + shift, Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] += b[i];
  trim(a);
}

long wdeg(const Monomial& m, const std::vector<long>& w) {
  long d = 0;
  for (std::size_t i = 0; i < w.size(); ++i) d += w[i] * m.e[i];
  return d;
}

std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
  std::sort(gens.begin(), gens.end(),
            [](const Monomial& a, const Monomial& b) { return a.total_degree() < b.total_degree(); });
  std::vector<Monomial> out;
  for (const auto& g : gens) {
    bool redundant = false;
    for (const auto& h : out)
      if (h.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) out.push_back(g);
  }
  return out;
}

Series numerator(std::vector<Monomial> gens, const std::vector<long>& w) {
  gens = minimalize(std::move(gens));
  if (gens.empty()) return {Integer(1)};
  for (const auto& g : gens)
    if (g.is_one()) return {};
  int n = static_cast<int>(w.size());
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  bool coprime = true;
  std::uint64_t seen = 0;
  for (const auto& g : gens) {
    std::uint64_t m = g.support_mask();
    if (m & seen) coprime = false;
    seen |= m;
    for (int v = 0; v < n; ++v)
      if (g.e[static_cast<std::size_t>(v)]) ++count[static_cast<std::size_t>(v)];
  }
  if (coprime) {
    Series r{Integer(1)};
    for (const auto& g : gens) {
      Series f(static_cast<std::size_t>(wdeg(g, w)) + 1, Integer(0));
      f[0] = 1;
      f.back() -= 1;
      r = mul(r, f);
    }
    return r;
  }
  int x = static_cast<int>(std::max_element(count.begin(), count.end()) - count.begin());
  unsigned e = 0xFFFF;
  for (const auto& g : gens)
    if (g.e[static_cast<std::size_t>(x)]) e = std::min<unsigned>(e, g.e[static_cast<std::size_t>(x)]);
  Monomial p;
  p.e[static_cast<std::size_t>(x)] = static_cast<std::uint16_t>(e);
  std::vector<Monomial> sum{p}, quot;
  for (const auto& g : gens) {
    if (!p.divides(g)) sum.push_back(g);
    quot.push_back(g / Monomial::gcd(g, p));
  }
  Series r = numerator(sum, w);
  add_shifted(r, numerator(quot, w), static_cast<std::size_t>(wdeg(p, w)));
  return r;
}

// Exact division by (1 - t); requires N(1) = 0.
Series divide_one_minus_t(const Series& a) {
  if (a.empty()) return {};
  std::size_t n = a.size() - 1;
  Series q(n, Integer(0));
  Integer carry = 0;
  for (std::size_t i = n; i >= 1; --i) {
    carry += a[i];
    q[i - 1] = -carry;
  }
  trim(q);
  return q;
}

Integer eval_one(const Series& s) {
  Integer v = 0;
  for (const auto& c : s) v += c;
  return v;
}

}  // namespace

std::vector<Integer> hilbert_numerator(std::vector<Monomial> gens, const std::vector<long>& weights) {
  for (long wi : weights)
    if (wi <= 0) throw AlgebraError("Hilbert series needs positive weights");
  return numerator(std::move(gens), weights);
}

HilbertData hilbert_data(const GroebnerBasis& G, const std::vector<long>& weights) {
  if (static_cast<int>(weights.size()) != G.ring()->nvars()) throw AlgebraError("Hilbert series: weight count mismatch");
  HilbertData h;
  h.numerator = hilbert_numerator(G.leading_monomials(), weights);
  if (h.numerator.empty()) {
    h.krull_dimension = -1;
    h.degree = 0;
    return h;
  }
  Series s = h.numerator;
  int k = 0;
  while (eval_one(s) == 0) {
    s = divide_one_minus_t(s);
    ++k;
  }
  h.krull_dimension = static_cast<int>(weights.size()) - k;
  Integer prod = 1;
  for (long wi : weights) prod *= wi;
  h.degree = Rational(eval_one(s), prod);
  h.degree.canonicalize();
  return h;
}

namespace {

// Monomials in the first nv variables divisible by no lead.
long count_standard(const std::vector<Monomial>& leads, int nv) {
  std::vector<int> bound(static_cast<std::size_t>(nv), -1);
  for (const auto& m : leads) {
    int support = -1, count = 0;
    for (int v = 0; v < nv; ++v)
      if (m.e[static_cast<std::size_t>(v)]) {
        support = v;
        ++count;
      }
    if (count == 0) return 0;
    if (count == 1) {
      int e = m.e[static_cast<std::size_t>(support)];
      int& b = bound[static_cast<std::size_t>(support)];
      b = b < 0 ? e : std::min(b, e);
    }
  }
  for (int b : bound)
    if (b < 0) throw AlgebraError("affine patch is not zero-dimensional");
  long count = 0;
  Monomial cur;
  while (true) {
    bool standard = true;
    for (const auto& m : leads) standard = standard && !m.divides(cur);
    if (standard) ++count;
    int v = 0;
    while (v < nv && ++cur.e[static_cast<std::size_t>(v)] >= bound[static_cast<std::size_t>(v)]) cur.e[static_cast<std::size_t>(v++)] = 0;
    if (v == nv) break;
  }
  return count;
}

}  // namespace

long zero_dim_degree(const Ideal& I, const std::vector<long>& projective_weights, const ZeroDimOptions& opts) {
  const RingPtr& R = I.ring();
  const int n = R->nvars();
  if (static_cast<int>(projective_weights.size()) != n) throw AlgebraError("zero_dim_degree: weight count mismatch");
  for (long w : projective_weights)
    if (w != 1) throw AlgebraError("zero_dim_degree supports unit weights only");
  for (const auto& g : I.generators()) {
    int d = -1;
    for (const auto& t : g.terms()) {
      if (d >= 0 && t.m.total_degree() != d) throw AlgebraError("zero_dim_degree: generator is not homogeneous");
      d = t.m.total_degree();
    }
  }
  GroebnerBasis G = buchberger(I, MatrixOrder::grevlex(n), opts.groebner);
  HilbertData h = hilbert_data(G, projective_weights);
  if (h.krull_dimension > 1) throw AlgebraError("locus not zero-dimensional");
  long degree = h.krull_dimension == 1 ? h.degree.get_num().get_si() : 0;
  if (!opts.cross_check || degree == 0 || n < 2) return degree;

  auto patch_count = [&](const std::vector<Polynomial>& gens, int chart_var) -> std::optional<long> {
    std::vector<Polynomial> at_infinity = gens;
    at_infinity.push_back(Polynomial::variable(R, chart_var));
    HilbertData hinf =
        hilbert_data(buchberger(Ideal(R, at_infinity), MatrixOrder::grevlex(n), opts.groebner), projective_weights);
    if (hinf.krull_dimension > 0) return std::nullopt;
    // Homogeneous basis with the chart variable last; its leading terms dehomogenize to those of the patch.
    std::vector<std::string> names;
    for (int v = 0; v < n; ++v)
      if (v != chart_var) names.push_back(R->name(v));
    names.push_back(R->name(chart_var));
    RingPtr P = Ring::make(names, {std::vector<long>(static_cast<std::size_t>(n), 1)});
    std::vector<Polynomial> moved;
    for (const auto& g : gens) moved.push_back(change_ring(g, P));
    GroebnerBasis H = buchberger(Ideal(P, moved), MatrixOrder::grevlex(n), opts.groebner);
    std::vector<Monomial> leads;
    for (const auto& g : H.elements()) {
      Monomial m = leading_term(g, H.order()).terms().front().m;
      m.e[static_cast<std::size_t>(n - 1)] = 0;
      leads.push_back(m);
    }
    return count_standard(leads, n - 1);
  };
  auto agree = [&](long patch) {
    if (patch != degree)
      throw AlgebraError("zero_dim_degree: patch count " + std::to_string(patch) + " disagrees with Hilbert degree " +
                         std::to_string(degree));
    return degree;
  };

  // A coordinate hyperplane missing every point keeps the generators sparse.
  for (int v = 0; v < n; ++v)
    if (auto patch = patch_count(I.generators(), v)) return agree(*patch);

  // Otherwise a seeded unimodular change of coordinates moving all points off x_1 = 0.
  for (std::uint64_t attempt = 0; attempt < 5; ++attempt) {
    CoefficientStream rng(opts.seed, 1000 + attempt);
    std::vector<std::vector<long>> L(static_cast<std::size_t>(n), std::vector<long>(static_cast<std::size_t>(n), 0));
    std::vector<std::vector<long>> U = L;
    for (int i = 0; i < n; ++i) {
      L[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
      U[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
      for (int j = 0; j < i; ++j) L[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rng.next();
      for (int j = i + 1; j < n; ++j) U[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = rng.next();
    }
    std::map<std::string, Polynomial> change;
    for (int i = 0; i < n; ++i) {
      Polynomial lin(R);
      for (int j = 0; j < n; ++j) {
        long c = 0;
        for (int k = 0; k < n; ++k)
          c += L[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * U[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (c) lin += Polynomial::variable(R, j) * Rational(c);
      }
      change.emplace(R->name(i), lin);
    }
    std::vector<Polynomial> moved;
    for (const auto& g : I.generators()) moved.push_back(substitute(g, R, change));
    if (auto patch = patch_count(moved, 0)) return agree(*patch);
  }
  throw AlgebraError("zero_dim_degree: no coordinate change separated the points from x_1 = 0");
}

}  // namespace tomlink
