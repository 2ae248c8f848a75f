#include <algorithm>

#include "tomlink/groebner.hpp"

namespace tomlink {

namespace detail {

struct GTerm {
  Monomial m;
  OrderKey k;
  Rational c;
};

using GPoly = std::vector<GTerm>;

struct BasisData {
  MatrixOrder order;
  std::vector<GPoly> polys;
  std::vector<std::uint64_t> masks;
};

}  // namespace detail

namespace {

using detail::GPoly;
using detail::GTerm;

struct Context {
  const MatrixOrder& order;
  std::size_t nrows;

  explicit Context(const MatrixOrder& o) : order(o), nrows(o.rows().size()) {}

  int cmp(const GTerm& a, const GTerm& b) const { return order.compare(a.k, a.m, b.k, b.m); }

  OrderKey add(const OrderKey& a, const OrderKey& b) const {
    OrderKey r{};
    for (std::size_t i = 0; i < nrows; ++i) r[i] = a[i] + b[i];
    return r;
  }
};

GPoly to_gpoly(const Polynomial& p, const Context& ctx) {
  GPoly out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) out.push_back({t.m, ctx.order.key(t.m), t.c});
  std::sort(out.begin(), out.end(), [&](const GTerm& a, const GTerm& b) { return ctx.cmp(a, b) > 0; });
  return out;
}

Polynomial from_gpoly(const GPoly& g, const RingPtr& ring) {
  std::vector<Term> terms;
  terms.reserve(g.size());
  for (const auto& t : g) terms.push_back({t.m, t.c});
  return Polynomial::from_terms(ring, std::move(terms));
}

void make_monic(GPoly& g) {
  if (g.empty() || g.front().c == 1) return;
  Rational inv = 1 / g.front().c;
  for (auto& t : g) t.c *= inv;
}

// f[from..] - c * u * g
GPoly sub_mul(const GPoly& f, std::size_t from, const Rational& c, const Monomial& u, const OrderKey& uk,
              const GPoly& g, const Context& ctx) {
  GPoly out;
  out.reserve(f.size() - from + g.size());
  std::size_t i = from, j = 0;
  GTerm scaled;
  bool have = false;
  auto load = [&]() {
    if (j < g.size()) {
      scaled.m = g[j].m * u;
      scaled.k = ctx.add(g[j].k, uk);
      scaled.c = g[j].c * c;
      have = true;
    } else {
      have = false;
    }
  };
  load();
  while (i < f.size() || have) {
    if (!have) {
      out.push_back(f[i++]);
      continue;
    }
    if (i >= f.size()) {
      scaled.c = -scaled.c;
      out.push_back(scaled);
      ++j;
      load();
      continue;
    }
    int s = ctx.cmp(f[i], scaled);
    if (s > 0) {
      out.push_back(f[i++]);
    } else if (s < 0) {
      scaled.c = -scaled.c;
      out.push_back(scaled);
      ++j;
      load();
    } else {
      Rational v = f[i].c - scaled.c;
      if (v != 0) out.push_back({f[i].m, f[i].k, v});
      ++i;
      ++j;
      load();
    }
  }
  return out;
}

struct Reducer {
  const Context& ctx;
  const std::vector<GPoly>& polys;
  const std::vector<std::uint64_t>& masks;
  std::vector<int> active;

  int find_divisor(const Monomial& m, int skip = -1) const {
    std::uint64_t mm = m.support_mask();
    for (int idx : active) {
      if (idx == skip) continue;
      if ((masks[static_cast<std::size_t>(idx)] & ~mm) != 0) continue;
      if (polys[static_cast<std::size_t>(idx)].front().m.divides(m)) return idx;
    }
    return -1;
  }

  GPoly reduce(GPoly f, bool full, int skip = -1) const {
    GPoly rem;
    std::size_t pos = 0;
    while (pos < f.size()) {
      const GTerm& lt = f[pos];
      int d = find_divisor(lt.m, skip);
      if (d < 0) {
        if (!full) {
          rem.insert(rem.end(), f.begin() + static_cast<long>(pos), f.end());
          return rem;
        }
        rem.push_back(lt);
        ++pos;
        continue;
      }
      const GPoly& g = polys[static_cast<std::size_t>(d)];
      Monomial u = lt.m / g.front().m;
      OrderKey uk = ctx.order.key(u);
      Rational c = lt.c / g.front().c;
      f = sub_mul(f, pos, c, u, uk, g, ctx);
      pos = 0;
    }
    return rem;
  }
};

struct Pair {
  int i, j;
  Monomial lcm;
  OrderKey key;
  long sugar;
};

class Engine {
 public:
  Engine(const MatrixOrder& order, const GroebnerOptions& opts) : ctx_(order), opts_(opts) {}

  // Returns false when the ideal is the unit ideal.
  bool run(std::vector<GPoly> input) {
    for (auto& f : input) {
      if (f.empty()) continue;
      make_monic(f);
      if (f.front().m.is_one()) return unit();
      long deg = total_degree(f);
      insert(std::move(f), deg);
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t p = 1; p < pairs_.size(); ++p) {
        const Pair& a = pairs_[p];
        const Pair& b = pairs_[best];
        if (a.sugar < b.sugar || (a.sugar == b.sugar && ctx_.order.compare(a.key, a.lcm, b.key, b.lcm) < 0)) best = p;
      }
      Pair pr = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      if (++processed_ > opts_.budget) throw BudgetExceeded(opts_.budget);
      GPoly s = spoly(pr);
      Reducer red{ctx_, polys_, masks_, active_};
      GPoly h = red.reduce(std::move(s), false);
      if (h.empty()) continue;
      h = red.reduce(std::move(h), true);
      make_monic(h);
      if (h.front().m.is_one()) return unit();
      insert(std::move(h), pr.sugar);
    }
    return true;
  }

  std::vector<GPoly> reduced_basis() {
    std::vector<int> act = active_;
    std::sort(act.begin(), act.end(), [&](int a, int b) {
      return ctx_.cmp(polys_[static_cast<std::size_t>(a)].front(), polys_[static_cast<std::size_t>(b)].front()) < 0;
    });
    std::vector<GPoly> out;
    Reducer red{ctx_, polys_, masks_, act};
    for (int idx : act) {
      GPoly g = polys_[static_cast<std::size_t>(idx)];
      GTerm head = g.front();
      GPoly tail(g.begin() + 1, g.end());
      GPoly rt = red.reduce(std::move(tail), true, idx);
      GPoly full;
      full.reserve(rt.size() + 1);
      full.push_back(head);
      full.insert(full.end(), rt.begin(), rt.end());
      make_monic(full);
      out.push_back(std::move(full));
    }
    return out;
  }

  std::size_t processed() const { return processed_; }
  bool is_unit() const { return unit_; }

 private:
  static long total_degree(const GPoly& f) {
    long d = 0;
    for (const auto& t : f) d = std::max<long>(d, t.m.total_degree());
    return d;
  }

  bool unit() {
    unit_ = true;
    return false;
  }

  GPoly spoly(const Pair& p) const {
    const GPoly& f = polys_[static_cast<std::size_t>(p.i)];
    const GPoly& g = polys_[static_cast<std::size_t>(p.j)];
    Monomial uf = p.lcm / f.front().m;
    Monomial ug = p.lcm / g.front().m;
    GPoly a;
    a.reserve(f.size() - 1);
    OrderKey kf = ctx_.order.key(uf);
    for (std::size_t k = 1; k < f.size(); ++k) a.push_back({f[k].m * uf, ctx_.add(f[k].k, kf), f[k].c});
    GPoly tail_g(g.begin() + 1, g.end());
    return sub_mul(a, 0, Rational(1), ug, ctx_.order.key(ug), tail_g, ctx_);
  }

  void insert(GPoly h, long sugar) {
    int hi = static_cast<int>(polys_.size());
    Monomial lh = h.front().m;
    masks_.push_back(lh.support_mask());
    polys_.push_back(std::move(h));
    sugar_.push_back(std::max(sugar, total_degree(polys_.back())));
    long sh = sugar_.back();
    int dh = lh.total_degree();

    struct Cand {
      int g;
      Monomial lcm;
      bool coprime;
      bool alive;
    };
    std::vector<Cand> C;
    for (int g : active_) {
      const Monomial& lg = polys_[static_cast<std::size_t>(g)].front().m;
      C.push_back({g, Monomial::lcm(lh, lg), lh.coprime(lg), true});
    }
    // Gebauer-Moeller: drop new pairs whose lcm is a proper multiple in the chain.
    std::vector<std::size_t> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      C[a].alive = false;
      bool keep = C[a].coprime;
      if (!keep) {
        keep = true;
        for (std::size_t b = 0; b < C.size() && keep; ++b)
          if (C[b].alive && C[b].lcm.divides(C[a].lcm)) keep = false;
        for (std::size_t b : D)
          if (keep && C[b].lcm.divides(C[a].lcm)) keep = false;
      }
      if (keep) D.push_back(a);
    }
    std::vector<Pair> kept;
    kept.reserve(pairs_.size() + D.size());
    for (const Pair& p : pairs_) {
      if (!lh.divides(p.lcm)) {
        kept.push_back(p);
        continue;
      }
      const Monomial& li = polys_[static_cast<std::size_t>(p.i)].front().m;
      const Monomial& lj = polys_[static_cast<std::size_t>(p.j)].front().m;
      if (Monomial::lcm(li, lh) == p.lcm || Monomial::lcm(lj, lh) == p.lcm) kept.push_back(p);
    }
    for (std::size_t a : D) {
      if (C[a].coprime) continue;
      int g = C[a].g;
      const Monomial& lg = polys_[static_cast<std::size_t>(g)].front().m;
      int dl = C[a].lcm.total_degree();
      long s = std::max(sh + dl - dh, sugar_[static_cast<std::size_t>(g)] + dl - lg.total_degree());
      kept.push_back({g, hi, C[a].lcm, ctx_.order.key(C[a].lcm), s});
    }
    pairs_ = std::move(kept);
    std::vector<int> act;
    for (int g : active_)
      if (!lh.divides(polys_[static_cast<std::size_t>(g)].front().m)) act.push_back(g);
    act.push_back(hi);
    active_ = std::move(act);
  }

  Context ctx_;
  GroebnerOptions opts_;
  std::vector<GPoly> polys_;
  std::vector<std::uint64_t> masks_;
  std::vector<long> sugar_;
  std::vector<int> active_;
  std::vector<Pair> pairs_;
  std::size_t processed_ = 0;
  bool unit_ = false;
};

}  // namespace

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    if (!same_ring(g.ring(), ring_)) throw AlgebraError("ideal generator lives in a different ring");
    gens_.push_back(std::move(g));
  }
}

GroebnerBasis buchberger(const Ideal& I, const MatrixOrder& order, const GroebnerOptions& opts) {
  if (order.nvars() != I.ring()->nvars()) throw AlgebraError("monomial order does not match the ring");
  Context ctx(order);
  std::vector<GPoly> input;
  for (const auto& g : I.generators()) input.push_back(to_gpoly(g, ctx));
  Engine eng(order, opts);
  eng.run(std::move(input));
  auto data = std::make_shared<detail::BasisData>();
  data->order = order;
  if (eng.is_unit()) {
    Monomial one;
    data->polys.push_back({{one, order.key(one), Rational(1)}});
  } else {
    data->polys = eng.reduced_basis();
  }
  for (const auto& p : data->polys) data->masks.push_back(p.front().m.support_mask());
  GroebnerBasis G;
  G.ring_ = I.ring();
  G.order_ = order;
  G.reduced_ = true;
  G.pairs_ = eng.processed();
  for (const auto& p : data->polys) G.elements_.push_back(from_gpoly(p, I.ring()));
  G.data_ = data;
  return G;
}

bool GroebnerBasis::is_unit() const {
  return elements_.size() == 1 && elements_.front().is_constant() && !elements_.front().is_zero();
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  if (!data_) return out;
  for (const auto& p : data_->polys) out.push_back(p.front().m);
  return out;
}

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const {
  if (!same_ring(p.ring(), ring_)) throw AlgebraError("normal form: ring mismatch");
  if (!data_ || p.is_zero()) return p;
  Context ctx(data_->order);
  std::vector<int> active(data_->polys.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = static_cast<int>(i);
  Reducer red{ctx, data_->polys, data_->masks, active};
  return from_gpoly(red.reduce(to_gpoly(p, ctx), true), ring_);
}

bool GroebnerBasis::contains(const Ideal& I) const {
  for (const auto& g : I.generators())
    if (!contains(g)) return false;
  return true;
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& G) { return G.normal_form(p); }

Polynomial leading_term(const Polynomial& p, const MatrixOrder& order) {
  if (p.is_zero()) return p;
  const Term* best = &p.terms().front();
  for (const auto& t : p.terms())
    if (order.compare(t.m, best->m) > 0) best = &t;
  return Polynomial::monomial(p.ring(), best->m, best->c);
}

}  // namespace tomlink
