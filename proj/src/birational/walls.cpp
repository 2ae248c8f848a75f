#include <algorithm>

#include "tomlink/birational.hpp"

namespace tomlink {

namespace {

// Q(w) with w^2 = p w + q; p = q = 0 is used for Q itself.
struct QuadField {
  Rational p = 0, q = 0;
};

struct Num {
  Rational a = 0, b = 0;  // a + b w
  bool zero() const { return a == 0 && b == 0; }
};

Num operator+(const Num& x, const Num& y) { return {x.a + y.a, x.b + y.b}; }
Num operator-(const Num& x) { return {-x.a, -x.b}; }
Num mul(const Num& x, const Num& y, const QuadField& F) {
  Rational bb = x.b * y.b;
  return {x.a * y.a + bb * F.q, x.a * y.b + x.b * y.a + bb * F.p};
}
Num scale(const Num& x, const Rational& c) { return {x.a * c, x.b * c}; }
Num inv(const Num& x, const QuadField& F) {
  // (a + b w)(a + b w') with w + w' = p, w w' = -q.
  Rational n = x.a * x.a + x.a * x.b * F.p - x.b * x.b * F.q;
  if (n == 0) throw AlgebraError("division by zero in the residue field");
  return {(x.a + x.b * F.p) / n, -x.b / n};
}

// Order-2 truncation at the origin of the local chart.
struct Jet {
  Num c;
  std::vector<Num> lin;
  std::vector<Num> quad;  // n*n, only entries i <= j used
  int source = 0;         // index of the generator
};

struct Chart {
  QuadField field;
  int chart_var = -1;      // set to 1
  int shifted_var = -1;    // replaced by root + v
  Num root;
  std::vector<int> local;  // ring index of each local coordinate
};

Jet make_jet(const Polynomial& f, const Chart& ch, int n) {
  const Ring& R = *f.ring();
  Jet J;
  J.lin.assign(static_cast<std::size_t>(n), Num{});
  J.quad.assign(static_cast<std::size_t>(n * n), Num{});
  std::vector<int> pos(static_cast<std::size_t>(R.nvars()), -1);
  for (int i = 0; i < n; ++i) pos[static_cast<std::size_t>(ch.local[static_cast<std::size_t>(i)])] = i;
  for (const auto& t : f.terms()) {
    int order = 0;
    std::vector<int> vars;
    for (int v = 0; v < R.nvars(); ++v) {
      if (v == ch.chart_var || v == ch.shifted_var) continue;
      int e = t.m.e[static_cast<std::size_t>(v)];
      order += e;
      for (int k = 0; k < e && vars.size() < 3; ++k) vars.push_back(pos[static_cast<std::size_t>(v)]);
    }
    if (order > 2) continue;
    int es = ch.shifted_var >= 0 ? t.m.e[static_cast<std::size_t>(ch.shifted_var)] : 0;
    int sv = ch.shifted_var >= 0 ? pos[static_cast<std::size_t>(ch.shifted_var)] : -1;
    // (root + v)^es = sum_k C(es, k) root^(es - k) v^k.
    Num rp{1, 0};
    std::vector<Num> powers{rp};
    for (int k = 1; k <= es; ++k) powers.push_back(rp = mul(rp, ch.root, ch.field));
    Rational binom = 1;
    for (int k = 0; k <= es && order + k <= 2; ++k) {
      if (k > 0) binom = binom * (es - k + 1) / k;
      Num coeff = scale(powers[static_cast<std::size_t>(es - k)], t.c * binom);
      if (coeff.zero()) continue;
      std::vector<int> all = vars;
      for (int i = 0; i < k; ++i) all.push_back(sv);
      if (all.empty()) J.c = J.c + coeff;
      else if (all.size() == 1) J.lin[static_cast<std::size_t>(all[0])] = J.lin[static_cast<std::size_t>(all[0])] + coeff;
      else {
        int i = std::min(all[0], all[1]), j = std::max(all[0], all[1]);
        auto& e = J.quad[static_cast<std::size_t>(i * n + j)];
        e = e + coeff;
      }
    }
  }
  return J;
}

// Quadratic part with v replaced by the linear form `lin` (which avoids v).
std::vector<Num> substitute_quad(const std::vector<Num>& Q, int v, const std::vector<Num>& lin, int n,
                                 const QuadField& F) {
  std::vector<Num> out = Q;
  auto add = [&](int i, int j, const Num& c) {
    if (i > j) std::swap(i, j);
    auto& e = out[static_cast<std::size_t>(i * n + j)];
    e = e + c;
  };
  for (int u = 0; u < n; ++u) {
    int i = std::min(u, v), j = std::max(u, v);
    Num c = Q[static_cast<std::size_t>(i * n + j)];
    out[static_cast<std::size_t>(i * n + j)] = Num{};
    if (c.zero()) continue;
    if (u == v) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          if (lin[static_cast<std::size_t>(a)].zero() || lin[static_cast<std::size_t>(b)].zero()) continue;
          Num prod = mul(mul(c, lin[static_cast<std::size_t>(a)], F), lin[static_cast<std::size_t>(b)], F);
          if (a <= b) add(a, b, a == b ? prod : scale(prod, 2));
        }
    } else {
      for (int a = 0; a < n; ++a)
        if (!lin[static_cast<std::size_t>(a)].zero()) add(a, u, mul(c, lin[static_cast<std::size_t>(a)], F));
    }
  }
  return out;
}

struct JetElimination {
  std::vector<int> eliminated;  // local indices
  std::vector<Jet> remaining;
};

JetElimination eliminate_jets(std::vector<Jet> jets, const std::vector<int>& priority, int n, const QuadField& F) {
  JetElimination out;
  for (int guard = 0; guard <= n; ++guard) {
    int v = -1;
    std::size_t e = 0;
    for (int cand : priority) {
      if (std::find(out.eliminated.begin(), out.eliminated.end(), cand) != out.eliminated.end()) continue;
      for (std::size_t k = 0; k < jets.size(); ++k)
        if (!jets[k].lin[static_cast<std::size_t>(cand)].zero()) {
          v = cand;
          e = k;
          break;
        }
      if (v >= 0) break;
    }
    if (v < 0) {
      out.remaining = jets;
      return out;
    }
    Jet piv = jets[e];
    jets.erase(jets.begin() + static_cast<long>(e));
    Num ic = -inv(piv.lin[static_cast<std::size_t>(v)], F);
    std::vector<Num> lin(static_cast<std::size_t>(n));
    for (int u = 0; u < n; ++u)
      if (u != v) lin[static_cast<std::size_t>(u)] = mul(piv.lin[static_cast<std::size_t>(u)], ic, F);
    auto q = substitute_quad(piv.quad, v, lin, n, F);
    for (auto& x : q) x = mul(x, ic, F);
    for (auto& J : jets) {
      Num cv = J.lin[static_cast<std::size_t>(v)];
      J.lin[static_cast<std::size_t>(v)] = Num{};
      J.quad = substitute_quad(J.quad, v, lin, n, F);
      if (cv.zero()) continue;
      for (int u = 0; u < n; ++u) J.lin[static_cast<std::size_t>(u)] = J.lin[static_cast<std::size_t>(u)] + mul(cv, lin[static_cast<std::size_t>(u)], F);
      for (std::size_t k = 0; k < q.size(); ++k) J.quad[k] = J.quad[k] + mul(cv, q[k], F);
    }
    out.eliminated.push_back(v);
  }
  throw AlgebraError("local elimination did not terminate");
}

// Univariate polynomials over Q, coefficient k of u^k.
using UPoly = std::vector<Rational>;

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly urem(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = urem(a, b);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

bool rational_sqrt(const Rational& x, Rational* out) {
  if (x < 0) return false;
  mpz_class n = x.get_num(), d = x.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
  mpz_class sn, sd;
  mpz_sqrt(sn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), d.get_mpz_t());
  *out = Rational(sn, sd);
  out->canonicalize();
  return true;
}

long localized_top(const Ring& R, int v, long dw) { return R.weight(0, v) + dw * R.weight(1, v); }

FlipData analyze_point(const Ideal& Y, const Chart& chart_in, long dw, const std::string& label) {
  Chart ch = chart_in;
  const Ring& R = *Y.ring();
  for (int v = 0; v < R.nvars(); ++v)
    if (v != ch.chart_var) ch.local.push_back(v);
  const int n = static_cast<int>(ch.local.size());
  std::vector<Jet> jets;
  for (std::size_t i = 0; i < Y.generators().size(); ++i) {
    const Polynomial& f = Y.generators()[i];
    if (f.is_zero()) continue;
    Jet J = make_jet(f, ch, n);
    J.source = static_cast<int>(i);
    if (!J.c.zero()) throw AlgebraError("h" + std::to_string(i + 1) + " does not vanish at " + label);
    jets.push_back(J);
  }
  auto idx_of = [&](const std::string& name) {
    int v = R.require_index(name);
    auto it = std::find(ch.local.begin(), ch.local.end(), v);
    return it == ch.local.end() ? -1 : static_cast<int>(it - ch.local.begin());
  };
  std::vector<int> priority;
  for (const auto& nm : elimination_priority(R)) {
    int k = idx_of(nm);
    if (k >= 0) priority.push_back(k);
  }
  auto el = eliminate_jets(jets, priority, n, ch.field);
  FlipData fd;
  fd.base_point = label;
  for (int k : el.eliminated) fd.eliminated.push_back(R.name(ch.local[static_cast<std::size_t>(k)]));
  std::vector<int> surv;
  for (int k = 0; k < n; ++k)
    if (std::find(el.eliminated.begin(), el.eliminated.end(), k) == el.eliminated.end()) surv.push_back(k);
  auto weight_of = [&](int k) { return localized_top(R, ch.local[static_cast<std::size_t>(k)], dw); };
  for (int k : surv) {
    long w = weight_of(k);
    if (w == 0) throw AlgebraError("a surviving coordinate has localized weight 0 at " + label);
    fd.survivors.push_back({R.name(ch.local[static_cast<std::size_t>(k)]), w});
    (w > 0 ? fd.contracted : fd.extracted).push_back(w);
  }
  std::stable_sort(fd.survivors.begin(), fd.survivors.end(), [](const auto& x, const auto& y) {
    if ((x.second > 0) != (y.second > 0)) return x.second > 0;
    return x.second > y.second;
  });
  std::sort(fd.contracted.rbegin(), fd.contracted.rend());
  std::sort(fd.extracted.rbegin(), fd.extracted.rend());
  if (fd.contracted.empty() || fd.extracted.empty()) throw AlgebraError("one side of the wall at " + label + " is empty");

  int t = idx_of("t");
  const Jet* hyp = nullptr;
  long best = 0;
  for (const auto& J : el.remaining) {
    bool found = false;
    for (int k : surv) {
      if (t < 0 || k == t || weight_of(k) >= 0) continue;
      int i = std::min(t, k), j = std::max(t, k);
      found = found || !J.quad[static_cast<std::size_t>(i * n + j)].zero();
    }
    if (!found) continue;
    const Polynomial& f = Y.generators()[static_cast<std::size_t>(J.source)];
    BiDegree bd = bidegree_of(f);
    long deg = bd.top + dw * bd.bottom;
    if (!hyp || deg < best) {
      hyp = &J;
      best = deg;
    }
  }
  if (hyp) {
    fd.hypersurface_degree = best;
    for (std::size_t a = 0; a < surv.size(); ++a)
      for (std::size_t b = a + 1; b < surv.size(); ++b) {
        int i = surv[a], j = surv[b];
        if (!hyp->quad[static_cast<std::size_t>(i * n + j)].zero())
          fd.hypersurface_pairs.push_back({R.name(ch.local[static_cast<std::size_t>(i)]), R.name(ch.local[static_cast<std::size_t>(j)])});
      }
  }
  const std::size_t dim = fd.survivors.size() - (hyp ? 1 : 0);
  if (dim != 4)
    throw AlgebraError("local model at " + label + " has " + std::to_string(fd.survivors.size()) + " coordinates" +
                       (hyp ? " and one equation" : "") + "; expected a 3-fold");
  return fd;
}

}  // namespace

std::vector<std::string> elimination_priority(const Ring& R) {
  std::vector<std::string> out;
  auto push = [&](const std::string& n) {
    if (R.index(n) >= 0 && std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  };
  push("s");
  for (int v = 0; v < R.nvars(); ++v)
    if (R.name(v)[0] == 'x') push(R.name(v));
  for (int v = 0; v < R.nvars(); ++v)
    if (R.name(v)[0] == 'y') push(R.name(v));
  push("t");
  for (int v = 0; v < R.nvars(); ++v) push(R.name(v));
  return out;
}

LinkStep analyze_wall(const Ideal& Y, const Scroll& scroll, const std::vector<std::string>& wall) {
  const Ring& R = *Y.ring();
  if (wall.empty()) throw AlgebraError("empty wall");
  if (wall.size() > 2) throw AlgebraError("wall groups of more than two variables are not analyzed");
  (void)scroll;
  std::vector<int> W;
  for (const auto& n : wall) W.push_back(R.require_index(n));
  const long dw = R.weight(0, W[0]);
  for (int v : W)
    if (R.weight(0, v) != dw) throw AlgebraError("wall variables have different weights");
  LinkStep step;
  step.wall = wall.size() == 1 ? wall[0] : wall[0] + "," + wall[1];

  // Restriction of every generator to the wall locus.
  std::vector<Polynomial> restricted;
  for (const auto& f : Y.generators()) {
    Polynomial g = f.filter([&](const Monomial& m) {
      for (int v = 0; v < R.nvars(); ++v)
        if (m.e[static_cast<std::size_t>(v)] && std::find(W.begin(), W.end(), v) == W.end()) return false;
      return true;
    });
    if (!g.is_zero()) restricted.push_back(g);
  }

  if (W.size() == 1) {
    if (!restricted.empty()) {
      step.kind = StepKind::Isomorphism;
      return step;
    }
    Chart ch;
    ch.chart_var = W[0];
    step.kind = StepKind::Flip;
    step.flips.push_back(analyze_point(Y, ch, dw, "P_" + wall[0]));
    return step;
  }

  if (restricted.empty()) throw AlgebraError("the wall line " + step.wall + " lies in Z");
  const int ya = W[0], yb = W[1];
  UPoly g;
  int at_infinity = 1 << 20;
  for (const auto& f : restricted) {
    UPoly u;
    int total = 0;
    for (const auto& t : f.terms()) {
      total = t.m.e[static_cast<std::size_t>(ya)] + t.m.e[static_cast<std::size_t>(yb)];
      std::size_t k = t.m.e[static_cast<std::size_t>(yb)];
      if (u.size() <= k) u.resize(k + 1, Rational(0));
      u[k] += t.c;
    }
    trim(u);
    at_infinity = std::min(at_infinity, total - static_cast<int>(u.size()) + 1);
    g = g.empty() ? ugcd(u, u) : ugcd(g, u);
  }
  const int finite = static_cast<int>(g.size()) - 1;
  if (finite + at_infinity == 0) {
    step.kind = StepKind::Isomorphism;
    return step;
  }
  if (finite + at_infinity > 2) throw AlgebraError("more than two base points on the wall line " + step.wall);

  const std::string A = wall[0], B = wall[1];
  std::vector<std::pair<Chart, std::string>> points;
  bool mirror = false;
  std::string conj_label;
  if (finite == 2) {
    Rational c1 = g[1], c0 = g[0];
    Rational disc = c1 * c1 - 4 * c0;
    Rational sq;
    if (disc == 0) throw AlgebraError("the base locus on " + step.wall + " is a double point");
    if (rational_sqrt(disc, &sq)) {
      for (Rational root : std::array<Rational, 2>{Rational((-c1 - sq) / 2), Rational((-c1 + sq) / 2)}) {
        Chart ch;
        ch.chart_var = ya;
        ch.shifted_var = yb;
        ch.root = Num{root, 0};
        points.push_back({ch, "P_(" + A + ":" + B + ")=(1:" + rational_to_string(root) + ")"});
      }
    } else {
      Chart ch;
      ch.field = QuadField{-c1, -c0};
      ch.chart_var = ya;
      ch.shifted_var = yb;
      ch.root = Num{0, 1};
      std::string rel = " with w^2 = " + rational_to_string(-c1) + "*w + " + rational_to_string(-c0);
      points.push_back({ch, "P_(" + A + ":" + B + ")=(1:w)" + rel});
      mirror = true;
      conj_label = "P_(" + A + ":" + B + ")=(1:w')" + rel;
    }
  } else {
    if (finite == 1) {
      Chart ch;
      ch.chart_var = ya;
      ch.shifted_var = yb;
      ch.root = Num{-g[0], 0};
      points.push_back({ch, "P_(" + A + ":" + B + ")=(1:" + rational_to_string(-g[0]) + ")"});
    }
    if (at_infinity == 1) {
      Chart ch;
      ch.chart_var = yb;
      ch.shifted_var = ya;
      ch.root = Num{0, 0};
      points.push_back({ch, "P_(" + A + ":" + B + ")=(0:1)"});
    } else if (at_infinity > 1) {
      throw AlgebraError("the base locus on " + step.wall + " is a double point");
    }
  }
  for (const auto& [ch, label] : points) step.flips.push_back(analyze_point(Y, ch, dw, label));
  if (mirror) {
    FlipData c = step.flips.front();
    c.base_point = conj_label;
    c.mirrored = true;
    step.flips.push_back(c);
  }
  step.kind = step.flips.size() == 2 ? StepKind::SimultaneousFlips : StepKind::Flip;
  return step;
}

}  // namespace tomlink
