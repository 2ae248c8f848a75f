#include <algorithm>

#include "tomlink/birational.hpp"

namespace tomlink {

namespace {

// Ring without `drop`, weights top + dw * bottom.
RingPtr localized_ring(const Ring& R, const std::vector<std::string>& drop, long dw) {
  std::vector<std::string> names;
  std::vector<long> w;
  for (int v = 0; v < R.nvars(); ++v) {
    if (std::find(drop.begin(), drop.end(), R.name(v)) != drop.end()) continue;
    names.push_back(R.name(v));
    w.push_back(R.weight(0, v) + (R.rank() > 1 ? dw * R.weight(1, v) : 0));
  }
  return Ring::make(names, {w});
}

std::vector<Polynomial> specialize(const Ideal& Y, const RingPtr& target, const std::map<std::string, Rational>& values) {
  std::map<std::string, Polynomial> a;
  for (const auto& [n, c] : values) a[n] = Polynomial::constant(target, c);
  std::vector<Polynomial> out;
  for (const auto& f : Y.generators()) {
    Polynomial g = substitute(f, target, a);
    if (!g.is_zero()) out.push_back(g);
  }
  return out;
}

RingPtr subring(const Ring& R, const std::vector<std::string>& keep) {
  std::vector<long> w;
  for (const auto& n : keep) w.push_back(R.weight(0, R.require_index(n)));
  return Ring::make(keep, {w});
}

long weighted_degree(const Polynomial& p) {
  const Ring& R = *p.ring();
  long d = 0;
  for (int v = 0; v < R.nvars(); ++v) d += R.weight(0, v) * p.terms().front().m.e[static_cast<std::size_t>(v)];
  return d;
}

}  // namespace

Elimination eliminate_lone_linear(std::vector<Polynomial> gens, const std::vector<std::string>& priority) {
  Elimination out;
  gens.erase(std::remove_if(gens.begin(), gens.end(), [](const Polynomial& p) { return p.is_zero(); }), gens.end());
  if (gens.empty()) return out;
  const RingPtr R = gens.front().ring();
  for (std::size_t guard = 0; guard <= priority.size(); ++guard) {
    bool done = false;
    for (const auto& name : priority) {
      int v = R->index(name);
      if (v < 0 || std::find(out.eliminated.begin(), out.eliminated.end(), name) != out.eliminated.end()) continue;
      for (std::size_t k = 0; k < gens.size() && !done; ++k) {
        const Polynomial& f = gens[k];
        int hits = 0;
        Rational c = 0;
        bool lone = false;
        for (const auto& t : f.terms()) {
          if (t.m.e[static_cast<std::size_t>(v)] == 0) continue;
          ++hits;
          Monomial mv;
          mv.e[static_cast<std::size_t>(v)] = 1;
          if (t.m == mv) {
            lone = true;
            c = t.c;
          }
        }
        if (hits != 1 || !lone) continue;
        Rational minus_inv = -1;
        minus_inv /= c;
        Polynomial expr = (f - Polynomial::variable(R, v) * c) * minus_inv;
        std::vector<Polynomial> next;
        for (std::size_t i = 0; i < gens.size(); ++i) {
          if (i == k) continue;
          Polynomial g = substitute(gens[i], {{name, expr}});
          if (!g.is_zero()) next.push_back(g);
        }
        for (auto& s : out.solved) s = substitute(s, {{name, expr}});
        out.eliminated.push_back(name);
        out.solved.push_back(expr);
        gens = next;
        done = true;
      }
      if (done) break;
    }
    if (!done) {
      out.remaining = gens;
      return out;
    }
  }
  throw AlgebraError("lone-linear elimination did not terminate");
}

EndpointFano endpoint_fano(const Ideal& Y, const Scroll& scroll, const std::string& contracted,
                           const std::string& previous, const GroebnerOptions& opts) {
  const Ring& R = *Y.ring();
  (void)scroll;
  const int cv = R.require_index(contracted), pv = R.require_index(previous);
  const long dc = R.weight(0, cv);
  EndpointFano ep;
  ep.contracted = contracted;
  // det of ((d_prev, d_c), (-1, -1)) in the localized columns of the last two rays.
  ep.det = R.weight(0, pv) * R.weight(1, cv) - R.weight(0, cv) * R.weight(1, pv);
  ep.gorenstein = ep.det == -1;
  RingPtr E = localized_ring(R, {contracted}, dc);
  auto gens = specialize(Y, E, {{contracted, Rational(1)}});
  auto el = eliminate_lone_linear(gens, elimination_priority(*E));
  ep.eliminated = el.eliminated;
  std::vector<std::string> keep;
  for (const auto& n : E->names())
    if (std::find(el.eliminated.begin(), el.eliminated.end(), n) == el.eliminated.end()) keep.push_back(n);
  ep.ring = subring(*E, keep);
  for (const auto& n : keep) ep.weights.push_back(ep.ring->weight(0, ep.ring->require_index(n)));
  std::vector<Polynomial> rem;
  for (const auto& f : el.remaining) {
    Polynomial g = change_ring(f, ep.ring).primitive();
    if (!is_homogeneous(g)) throw AlgebraError("endpoint equation is not homogeneous");
    rem.push_back(g);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const Polynomial& a, const Polynomial& b) {
    long da = weighted_degree(a), db = weighted_degree(b);
    return da != db ? da < db : a.size() < b.size();
  });
  MatrixOrder order = MatrixOrder::weighted_grevlex(ep.weights);
  for (const auto& f : rem) {
    if (!ep.equations.empty() && buchberger(Ideal(ep.ring, ep.equations), order, opts).contains(f)) continue;
    ep.equations.push_back(f);
  }
  ep.minimal_certified = true;
  ep.codimension = static_cast<int>(keep.size()) - 1 - 3;
  if (ep.codimension >= 4)
    throw AlgebraError("endpoint has codimension " + std::to_string(ep.codimension) + "; the codimension did not drop");
  return ep;
}

long dp_degree(const Ideal& Y, const Scroll& scroll, const std::array<std::string, 2>& base, std::uint64_t seed,
               const GroebnerOptions& opts) {
  const Ring& R = *Y.ring();
  (void)scroll;
  const long dw = R.weight(0, R.require_index(base[0]));
  if (R.weight(0, R.require_index(base[1])) != dw) throw AlgebraError("base variables carry different weights");
  RingPtr F = localized_ring(R, {base[0], base[1]}, dw);
  std::string last;
  for (std::uint64_t attempt = 0; attempt < 5; ++attempt) {
    CoefficientStream rng(seed, 500 + attempt);
    Rational c0 = rng.next(), c1 = rng.next();
    auto gens = specialize(Y, F, {{base[0], c0}, {base[1], c1}});
    auto el = eliminate_lone_linear(gens, {"s"});
    if (el.eliminated.empty()) {
      last = "s is not eliminated over (" + rational_to_string(c0) + ":" + rational_to_string(c1) + ")";
      continue;
    }
    std::vector<std::string> keep;
    for (const auto& n : F->names())
      if (n != "s") keep.push_back(n);
    RingPtr G = subring(*F, keep);
    std::vector<Polynomial> fib;
    for (const auto& f : el.remaining) fib.push_back(change_ring(f, G));
    std::vector<long> w = G->weights()[0];
    HilbertData h = hilbert_data(buchberger(Ideal(G, fib), MatrixOrder::weighted_grevlex(w), opts), w);
    if (h.krull_dimension != 3) {
      last = "fibre over (" + rational_to_string(c0) + ":" + rational_to_string(c1) + ") has dimension " +
             std::to_string(h.krull_dimension - 1);
      continue;
    }
    if (h.degree.get_den() != 1) throw AlgebraError("fibre degree " + rational_to_string(h.degree) + " is not integral");
    return h.degree.get_num().get_si();
  }
  throw AlgebraError("no general fibre found: " + last);
}

ConicData conic_discriminant(const Ideal& Y, const Scroll& scroll, const std::vector<std::string>& base,
                             const GroebnerOptions& opts) {
  const Ring& R = *Y.ring();
  (void)scroll;
  ConicData out;
  out.base = base;
  if (base.size() == 4) {
    out.structural_only = true;
    out.note = "base is a quadric surface in P^3; discriminant not computed";
    return out;
  }
  if (base.size() != 3) throw AlgebraError("conic bundle base must have three coordinates");
  const long dw = R.weight(0, R.require_index(base[0]));
  out.line_var = base[2];
  out.patch_vars = {base[0], base[1]};
  for (std::size_t p = 0; p < 2; ++p) {
    const std::string& patch = base[p];
    const std::string& param = base[1 - p];
    RingPtr P = localized_ring(R, {patch, out.line_var}, dw);
    auto gens = specialize(Y, P, {{patch, Rational(1)}, {out.line_var, Rational(0)}});
    auto prio = elimination_priority(*P);
    prio.erase(std::remove(prio.begin(), prio.end(), param), prio.end());
    auto el = eliminate_lone_linear(gens, prio);
    out.eliminated[p] = el.eliminated;
    std::vector<std::string> fibre;
    for (const auto& n : P->names())
      if (n != param && std::find(el.eliminated.begin(), el.eliminated.end(), n) == el.eliminated.end()) fibre.push_back(n);
    if (fibre.size() != 3)
      throw AlgebraError("patch " + patch + " leaves " + std::to_string(fibre.size()) + " fibre coordinates, not 3");
    out.fibre_vars[p] = fibre;
    std::vector<Polynomial> rem = el.remaining;
    std::stable_sort(rem.begin(), rem.end(), [](const Polynomial& a, const Polynomial& b) { return a.size() < b.size(); });
    const Polynomial* conic = nullptr;
    for (const auto& c : rem) {
      bool all = true;
      for (const auto& f : rem) all = all && divides(c, f);
      if (all) {
        conic = &c;
        break;
      }
    }
    if (!conic) throw AlgebraError("patch " + patch + ": more than one independent generator remains");
    out.conics[p] = *conic;
    RingPtr B = Ring::make({param}, {{1}});
    std::vector<std::vector<PolynomialBuilder>> gram(3, std::vector<PolynomialBuilder>(3, PolynomialBuilder(B)));
    std::array<int, 3> fi;
    for (std::size_t i = 0; i < 3; ++i) fi[i] = P->require_index(fibre[i]);
    const int pi = P->require_index(param);
    for (const auto& t : conic->terms()) {
      std::vector<std::size_t> hit;
      for (std::size_t i = 0; i < 3; ++i)
        for (int k = 0; k < t.m.e[static_cast<std::size_t>(fi[i])]; ++k) hit.push_back(i);
      int other = 0;
      for (int v = 0; v < P->nvars(); ++v)
        if (v != pi && std::find(fi.begin(), fi.end(), v) == fi.end()) other += t.m.e[static_cast<std::size_t>(v)];
      if (hit.size() != 2 || other != 0)
        throw AlgebraError("patch " + patch + ": the surviving generator is not quadratic in the fibre coordinates");
      Monomial m;
      m.e[0] = t.m.e[static_cast<std::size_t>(pi)];
      if (hit[0] == hit[1]) {
        gram[hit[0]][hit[0]].add(m, t.c);
      } else {
        gram[hit[0]][hit[1]].add(m, t.c / 2);
        gram[hit[1]][hit[0]].add(m, t.c / 2);
      }
    }
    std::vector<std::vector<Polynomial>> A(3, std::vector<Polynomial>(3));
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) A[i][j] = gram[i][j].build();
    out.determinants[p] = determinant(A, B);
    if (out.determinants[p].is_zero()) throw AlgebraError("patch " + patch + ": the conic is everywhere degenerate");
  }
  const Polynomial& d1 = out.determinants[0];
  const Polynomial& d2 = out.determinants[1];
  const long deg1 = d1.degree_in(0), deg2 = d2.degree_in(0);
  // Binary forms in (base0, base1): on patch 1 the coordinate is base1/base0, on patch 2 base0/base1.
  RingPtr L = Ring::make({base[0], base[1]}, {{1, 1}});
  auto homog = [&](const Polynomial& d, long deg, bool first_patch) {
    PolynomialBuilder b(L);
    for (const auto& t : d.terms()) {
      Monomial m;
      int k = t.m.e[0];
      m.e[first_patch ? 1 : 0] = static_cast<std::uint16_t>(k);
      m.e[first_patch ? 0 : 1] = static_cast<std::uint16_t>(deg - k);
      b.add(m, t.c);
    }
    return b.build();
  };
  Polynomial H1 = homog(d1, deg1, true), H2 = homog(d2, deg2, false);
  ZeroDimOptions zo;
  zo.groebner = opts;
  out.shared_roots = zero_dim_degree(Ideal(L, {H1, H2}), {1, 1}, zo);
  out.delta = deg1 + deg2 - out.shared_roots;
  out.delta_cross_check = deg1 + d2.min_degree_in(0);
  return out;
}

}  // namespace tomlink
