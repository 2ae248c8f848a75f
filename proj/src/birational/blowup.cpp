#include <algorithm>

#include "tomlink/birational.hpp"

namespace tomlink {

namespace {

const std::array<const char*, 3> kX{"x1", "x2", "x3"};
const std::array<const char*, 4> kY{"y1", "y2", "y3", "y4"};

Polynomial divide_t(const Polynomial& p, const RingPtr& R, int k, const std::string& what) {
  int t = R->require_index("t");
  if (p.is_zero()) return p;
  if (p.min_degree_in(t) < k)
    throw AlgebraError(what + " is divisible only by t^" + std::to_string(p.min_degree_in(t)) + ", expected t^" +
                       std::to_string(k));
  return exact_divide(p, Polynomial::variable(R, t).pow(static_cast<unsigned>(k)));
}

// x_i -> t^w_i x_i, y_j -> t^e_j y_j, s -> t^(r - 1) s, into the scroll ring.
std::map<std::string, Polynomial> integral_pullback(const Scroll& sc, const std::array<long, 4>& deltas) {
  const RingPtr& F = sc.ring;
  Polynomial t = Polynomial::variable(F, "t");
  std::map<std::string, Polynomial> m;
  for (std::size_t i = 0; i < 3; ++i)
    m[kX[i]] = t.pow(static_cast<unsigned>(sc.x_weights[i])) * Polynomial::variable(F, kX[i]);
  for (std::size_t j = 0; j < 4; ++j) {
    long num = deltas[j] + sc.d[j] * (sc.r - 1);
    if (num % sc.r != 0)
      throw AlgebraError("the pullback exponent of y" + std::to_string(j + 1) + " is not integral");
    m[kY[j]] = t.pow(static_cast<unsigned>(num / sc.r)) * Polynomial::variable(F, kY[j]);
  }
  m["s"] = t.pow(static_cast<unsigned>(sc.r - 1)) * Polynomial::variable(F, "s");
  return m;
}

}  // namespace

RingPtr z_ring_for(long a, long b, long c, const std::array<long, 4>& d) {
  return Ring::make({"x1", "x2", "x3", "y1", "y2", "y3", "y4"}, {{a, b, c, d[0], d[1], d[2], d[3]}});
}

void validate_case(const FanoCase& fc) {
  for (std::size_t j = 0; j + 1 < 4; ++j)
    if (fc.d[j] < fc.d[j + 1]) throw AlgebraError("case " + fc.id + ": ideal weights not sorted");
  if (fc.d[3] < 1) throw AlgebraError("case " + fc.id + ": ideal weights must be positive");
  if (std::min({fc.a, fc.b, fc.c}) != 1) throw AlgebraError("case " + fc.id + ": min(a,b,c) must be 1");
  if (fc.r < 1) throw AlgebraError("case " + fc.id + ": centre index must be positive");
  if (!fc.M.ring()) throw AlgebraError("case " + fc.id + ": no matrix");
  const Ring& R = *fc.M.ring();
  std::array<long, 7> want{fc.a, fc.b, fc.c, fc.d[0], fc.d[1], fc.d[2], fc.d[3]};
  for (std::size_t i = 0; i < 7; ++i) {
    const char* n = i < 3 ? kX[i] : kY[i - 3];
    if (R.weight(0, R.require_index(n)) != want[i])
      throw AlgebraError("case " + fc.id + ": ring weight of " + n + " disagrees with the ambient weights");
  }
  if (!check_tom(fc.M, fc.fmt)) throw AlgebraError("case " + fc.id + ": matrix is not in Tom_" + std::to_string(fc.fmt.k) + " format");
  bool centre = false;
  for (const auto& p : fc.basket.points) centre = centre || p.point == fc.centre();
  if (!centre) throw AlgebraError("case " + fc.id + ": basket does not contain the centre " + fc.centre().to_string());
}

Scroll kawamata_scroll(const FanoCase& fc) {
  Scroll sc;
  sc.r = fc.r;
  sc.x_weights = {fc.a, fc.b, fc.c};
  sc.d = fc.d;
  sc.ring = Ring::make({"t", "s", "x1", "x2", "x3", "y1", "y2", "y3", "y4"},
                       {{0, fc.r, fc.a, fc.b, fc.c, fc.d[0], fc.d[1], fc.d[2], fc.d[3]}, {1, 1, 0, 0, 0, -1, -1, -1, -1}});
  return sc;
}

std::array<long, 4> compute_deltas(const std::array<Polynomial, 4>& g, const FanoCase& fc) {
  std::array<long, 4> delta = fc.d;
  std::array<long, 3> xw{fc.a, fc.b, fc.c};
  for (std::size_t j = 0; j < 4; ++j) {
    const Ring& R = *g[j].ring();
    bool pure = false;
    for (const auto& t : g[j].terms()) {
      bool p = true;
      for (const char* n : kY) p = p && t.m.e[static_cast<std::size_t>(R.require_index(n))] == 0;
      pure = pure || p;
    }
    if (!pure)
      throw AlgebraError("g" + std::to_string(j + 1) + " has no monomial in the orbinates alone; the matrix is not general");
  }
  for (int round = 0; round < 8; ++round) {
    std::array<long, 4> next = delta;
    for (std::size_t j = 0; j < 4; ++j) {
      const Ring& R = *g[j].ring();
      auto yj = static_cast<std::size_t>(R.require_index(kY[j]));
      long best = -1;
      for (const auto& t : g[j].terms()) {
        if (t.m.e[yj] > 0) continue;
        long tau = 0;
        for (std::size_t i = 0; i < 3; ++i) tau += xw[i] * t.m.e[static_cast<std::size_t>(R.require_index(kX[i]))];
        for (std::size_t i = 0; i < 4; ++i) tau += delta[i] * t.m.e[static_cast<std::size_t>(R.require_index(kY[i]))];
        if (best < 0 || tau < best) best = tau;
      }
      next[j] = best;
    }
    if (next == delta) break;
    delta = next;
  }
  for (std::size_t j = 0; j < 4; ++j)
    if (delta[j] < fc.d[j])
      throw AlgebraError("delta_" + std::to_string(j + 1) + " = " + std::to_string(delta[j]) + " is below d_" +
                         std::to_string(j + 1));
  return delta;
}

Ideal blowup_ideal(const UnprojectionResult& res, const Scroll& sc, const std::array<long, 4>& deltas) {
  const RingPtr& F = sc.ring;
  Polynomial t = Polynomial::variable(F, "t");
  std::map<std::string, Polynomial> alpha;
  for (const char* y : kY) alpha[y] = t * Polynomial::variable(F, y);
  std::vector<Polynomial> h;
  const int k = res.fmt.k;
  h.push_back(divide_t(substitute(res.pf[static_cast<std::size_t>(k - 1)], F, alpha), F, 2, "alpha1* Pf" + std::to_string(k)));
  for (int i = 1; i <= 5; ++i)
    if (i != k)
      h.push_back(divide_t(substitute(res.pf[static_cast<std::size_t>(i - 1)], F, alpha), F, 1, "alpha1* Pf" + std::to_string(i)));
  auto phi = integral_pullback(sc, deltas);
  for (std::size_t j = 0; j < 4; ++j) {
    const Polynomial& gen = res.X_ideal.generators()[5 + j];
    Polynomial img = substitute(gen, F, phi);
    int sy = static_cast<int>(sc.r - 1 + phi.at(kY[j]).min_degree_in(F->require_index("t")));
    int got = img.min_degree_in(F->require_index("t"));
    if (got != sy)
      throw AlgebraError("pullback of s*y" + std::to_string(j + 1) + " - g" + std::to_string(j + 1) + " has t-content t^" +
                         std::to_string(got) + ", expected t^" + std::to_string(sy));
    h.push_back(divide_t(img, F, sy, "pullback of s*y" + std::to_string(j + 1) + " - g" + std::to_string(j + 1)));
  }
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (h[i].is_zero()) continue;
    if (!is_homogeneous(h[i])) throw AlgebraError("h" + std::to_string(i + 1) + " is not bihomogeneous in the scroll");
  }
  return Ideal(F, h);
}

Ideal pullback_ideal(const UnprojectionResult& res, const Scroll& sc) {
  std::array<long, 4> deltas;
  for (std::size_t j = 0; j < 4; ++j) deltas[j] = sc.r + sc.d[j];
  auto phi = integral_pullback(sc, deltas);
  std::vector<Polynomial> out;
  for (const auto& g : res.X_ideal.generators()) out.push_back(substitute(g, sc.ring, phi));
  return Ideal(sc.ring, out);
}

OracleResult saturation_oracle(const UnprojectionResult& res, const Scroll& sc, const Ideal& Y,
                               const GroebnerOptions& opts) {
  Ideal P = pullback_ideal(res, sc);
  const long a = sc.x_weights[0], b = sc.x_weights[1], c = sc.x_weights[2];
  OrderFactory factory = [&](const RingPtr& ext) {
    // Columns (z, s, x1, x2, x3, y1..y4, t) mapped onto the ring by name.
    std::vector<std::string> cols{ext->name(0), "s", "x1", "x2", "x3", "y1", "y2", "y3", "y4", "t"};
    std::vector<std::vector<long>> base;
    base.push_back({1, 0, 0, 0, 0, 0, 0, 0, 0, 0});
    base.push_back({0, 1, 0, 0, 0, 0, 0, 0, 0, 0});
    std::vector<long> w{0, 0, a, b, c, sc.d[0] - 1, sc.d[1] - 1, sc.d[2] - 1, sc.d[3] - 1, 1};
    base.push_back(w);
    w[9] = 0;
    base.push_back(w);
    for (std::size_t y = 8; y >= 6; --y) {
      w[y] = 0;
      base.push_back(w);
    }
    std::vector<std::vector<long>> rows;
    for (const auto& row : base) {
      std::vector<long> out(static_cast<std::size_t>(ext->nvars()), 0);
      for (std::size_t i = 0; i < cols.size(); ++i) out[static_cast<std::size_t>(ext->require_index(cols[i]))] = row[i];
      rows.push_back(out);
    }
    std::vector<int> priority;
    for (const auto& n : cols) priority.push_back(ext->require_index(n));
    return MatrixOrder(ext->nvars(), rows, TieBreak::Lex, priority);
  };
  Ideal S = saturate(P, "t", factory, opts);
  OracleResult out;
  out.saturation_size = S.size();
  MatrixOrder o = MatrixOrder::grevlex(sc.ring->nvars());
  GroebnerBasis GS = buchberger(S, o, opts);
  GroebnerBasis GY = buchberger(Y, o, opts);
  bool y_in_s = GS.contains(Y), s_in_y = GY.contains(S);
  out.equal = y_in_s && s_in_y;
  out.detail = std::string("h in saturation: ") + (y_in_s ? "yes" : "no") + ", saturation in <h>: " + (s_in_y ? "yes" : "no");
  return out;
}

}  // namespace tomlink
