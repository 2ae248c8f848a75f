#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "tomlink/algebra.hpp"

namespace tomlink {

namespace {

long ext_gcd(long a, long b, long& s, long& t) {
  // Returns g = s*a + t*b with g >= 0.
  long s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (b != 0) {
    long q = a / b;
    long r = a - q * b;
    a = b;
    b = r;
    long ns = s0 - q * s1;
    s0 = s1;
    s1 = ns;
    long nt = t0 - q * t1;
    t0 = t1;
    t1 = nt;
  }
  if (a < 0) {
    a = -a;
    s0 = -s0;
    t0 = -t0;
  }
  s = s0;
  t = t0;
  return a;
}

// Upper-triangular basis (a, b; 0, c) of the lattice generated by `gens`.
struct Lattice2 {
  long a = 0, b = 0, c = 0;

  void add(long u, long w) {
    if (u == 0 && w == 0) return;
    long s, t;
    long g = ext_gcd(a, u, s, t);
    long e;
    if (g == 0) {
      e = w;
    } else {
      long nb = s * b + t * w;
      e = (-u / g) * b + (a / g) * w;
      a = g;
      b = nb;
    }
    c = std::gcd(c, std::labs(e));
    if (c != 0) {
      b %= c;
      if (b < 0) b += c;
    }
  }
};

}  // namespace

WellFormResult well_form(const RingPtr& ring) {
  if (ring->rank() != 2) throw AlgebraError("well_form needs a rank-2 grading");
  const auto& T = ring->weights()[0];
  const auto& B = ring->weights()[1];
  const int n = ring->nvars();
  for (int k = 0; k < n; ++k)
    if (T[static_cast<std::size_t>(k)] == 0 && B[static_cast<std::size_t>(k)] == 0)
      throw AlgebraError("variable " + ring->name(k) + " has bidegree (0,0)");
  int ci = -1, cj = -1;
  long delta = 0;
  for (int i = 0; i < n && ci < 0; ++i)
    for (int j = i + 1; j < n; ++j) {
      long d = T[static_cast<std::size_t>(i)] * B[static_cast<std::size_t>(j)] -
               T[static_cast<std::size_t>(j)] * B[static_cast<std::size_t>(i)];
      if (d != 0) {
        ci = i;
        cj = j;
        delta = d;
        break;
      }
    }
  if (ci < 0) throw AlgebraError("weight rows are linearly dependent");
  const long ti = T[static_cast<std::size_t>(ci)], tj = T[static_cast<std::size_t>(cj)];
  const long bi = B[static_cast<std::size_t>(ci)], bj = B[static_cast<std::size_t>(cj)];
  // A lattice vector x = alpha*T + beta*B is determined by (x_ci, x_cj) = (u, w).
  auto coeffs = [&](long u, long w, Rational& alpha, Rational& beta) {
    alpha = Rational(u * bj - w * bi, delta);
    beta = Rational(w * ti - u * tj, delta);
    alpha.canonicalize();
    beta.canonicalize();
  };
  auto integral = [&](long u, long w) {
    Rational alpha, beta;
    coeffs(u, w, alpha, beta);
    for (int k = 0; k < n; ++k) {
      Rational x = alpha * T[static_cast<std::size_t>(k)] + beta * B[static_cast<std::size_t>(k)];
      if (x.get_den() != 1) return false;
    }
    return true;
  };
  const long D = std::labs(delta);
  Lattice2 lat;
  lat.add(D, 0);
  lat.add(0, D);
  for (long u = 0; u < D; ++u)
    for (long w = 0; w < D; ++w)
      if (integral(u, w)) lat.add(u, w);
  // Express T in the basis b1 = (a, b), b2 = (0, c).
  if (ti % lat.a != 0) throw AlgebraError("top row is not a lattice vector");
  long m1 = ti / lat.a;
  long rem = tj - m1 * lat.b;
  if (rem % lat.c != 0) throw AlgebraError("top row is not a lattice vector");
  long m2 = rem / lat.c;
  long s, t;
  long g = ext_gcd(m1, m2, s, t);
  if (g != 1) throw AlgebraError("top row is not primitive in the weight lattice");
  // det [[m1, m2], [n1, n2]] = 1 with n1 = -t, n2 = s.
  long n1 = -t, n2 = s;
  long vu = n1 * lat.a, vw = n1 * lat.b + n2 * lat.c;
  Rational alpha, beta;
  coeffs(vu, vw, alpha, beta);
  auto vec_at = [&](const Rational& al, const Rational& be) {
    std::vector<long> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      Rational x = al * T[static_cast<std::size_t>(k)] + be * B[static_cast<std::size_t>(k)];
      v[static_cast<std::size_t>(k)] = x.get_num().get_si();
    }
    return v;
  };
  auto norm = [](const std::vector<long>& v) {
    long s1 = 0;
    for (long x : v) s1 += std::labs(x);
    return s1;
  };
  // Choose the representative modulo T with least L1 norm (ties: smallest shift).
  long best_k = 0;
  long best = norm(vec_at(alpha, beta));
  for (long k = -64; k <= 64; ++k) {
    long nk = norm(vec_at(alpha + k, beta));
    if (nk < best || (nk == best && std::labs(k) < std::labs(best_k))) {
      best = nk;
      best_k = k;
    }
  }
  alpha += best_k;
  std::vector<long> v = vec_at(alpha, beta);
  auto first_nz = std::find_if(v.begin(), v.end(), [](long x) { return x != 0; });
  if (first_nz != v.end() && *first_nz < 0) {
    for (auto& x : v) x = -x;
    alpha = -alpha;
    beta = -beta;
  }
  WellFormResult res;
  res.ring = Ring::make(ring->names(), {T, v});
  res.transform = {{{Rational(1), Rational(0)}, {alpha, beta}}};
  return res;
}

WellFormResult well_form(const RingPtr& ring, int pivot) {
  if (ring->rank() != 2) throw AlgebraError("well_form needs a rank-2 grading");
  const auto& T = ring->weights()[0];
  const auto& B = ring->weights()[1];
  const int n = ring->nvars();
  long tp = T.at(static_cast<std::size_t>(pivot)), bp = B.at(static_cast<std::size_t>(pivot));
  if (bp == 0) throw AlgebraError("pivot variable has zero bottom weight");
  std::vector<long> top(static_cast<std::size_t>(n));
  long g = 0;
  for (int k = 0; k < n; ++k) {
    top[static_cast<std::size_t>(k)] = bp * T[static_cast<std::size_t>(k)] - tp * B[static_cast<std::size_t>(k)];
    g = std::gcd(g, std::labs(top[static_cast<std::size_t>(k)]));
  }
  if (g == 0) throw AlgebraError("degenerate localisation");
  long sign = 1;
  auto first_nz = std::find_if(top.begin(), top.end(), [](long x) { return x != 0; });
  if (*first_nz < 0) sign = -1;
  for (auto& x : top) x = sign * x / g;
  WellFormResult res;
  res.ring = Ring::make(ring->names(), {top, B});
  Rational a(sign * bp, g), b(-sign * tp, g);
  a.canonicalize();
  b.canonicalize();
  res.transform = {{{a, b}, {Rational(0), Rational(1)}}};
  return res;
}

CoefficientStream::CoefficientStream(std::uint64_t seed, std::uint64_t stream)
    : state_(seed * 0x9E3779B97F4A7C15ull ^ (stream + 0x632BE59BD9B4E019ull) * 0xD1B54A32D192ED03ull) {}

std::uint64_t CoefficientStream::next_raw() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

long CoefficientStream::next() {
  long r = static_cast<long>(next_raw() % 18);
  return r < 9 ? r - 9 : r - 8;
}

namespace {

void enumerate(const Ring& ring, int var, long remaining, Monomial& cur, std::vector<Monomial>& out) {
  if (var == ring.nvars()) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  long w = ring.weight(0, var);
  for (long k = 0; k * w <= remaining; ++k) {
    cur.e[static_cast<std::size_t>(var)] = static_cast<std::uint16_t>(k);
    enumerate(ring, var + 1, remaining - k * w, cur, out);
  }
  cur.e[static_cast<std::size_t>(var)] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(const Ring& ring, long top_degree) {
  for (int i = 0; i < ring.nvars(); ++i)
    if (ring.weight(0, i) <= 0) throw AlgebraError("monomial enumeration needs positive top weights");
  std::vector<Monomial> out;
  if (top_degree < 0) return out;
  Monomial cur;
  enumerate(ring, 0, top_degree, cur, out);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return b < a; });
  return out;
}

Polynomial random_general(long degree, const RingPtr& ring, const MonomialFilter& admissible, std::uint64_t seed,
                          std::uint64_t stream) {
  BiDegree d;
  d.top = degree;
  return random_general(d, ring, admissible, seed, stream);
}

Polynomial random_general(const BiDegree& degree, const RingPtr& ring, const MonomialFilter& admissible,
                          std::uint64_t seed, std::uint64_t stream) {
  std::vector<Monomial> mons = monomials_of_degree(*ring, degree.top);
  CoefficientStream rng(seed, stream);
  PolynomialBuilder b(ring);
  bool any = false;
  for (const auto& m : mons) {
    if (degree.has_bottom && ring->rank() == 2 && bidegree_of_monomial(*ring, m).bottom != degree.bottom) continue;
    if (admissible && !admissible(m)) continue;
    b.add(m, Rational(rng.next()));
    any = true;
  }
  if (!any) throw AlgebraError("no admissible monomial of degree " + degree.to_string());
  return b.build();
}

}  // namespace tomlink
