#include <algorithm>
#include <numeric>
#include <regex>

#include "tomlink/birational.hpp"

namespace tomlink {

namespace {

long mod(long v, long r) { return ((v % r) + r) % r; }

void remove_type(Basket& b, const QuotientPoint& q, const std::string& why) {
  auto it = std::find_if(b.points.begin(), b.points.end(), [&](const BasketPoint& p) { return p.point == q; });
  if (it == b.points.end())
    throw AlgebraError(why + ": the basket " + b.to_string() + " has no point of type " + q.to_string());
  b.points.erase(it);
}

// Points at the coordinate vertices of one side of a flip.
std::vector<BasketPoint> flip_side_points(const FlipData& f, bool positive) {
  std::vector<BasketPoint> out;
  for (const auto& [v, w] : f.survivors) {
    if (positive ? w <= 1 : w >= -1) continue;
    std::vector<long> local;
    for (const auto& [u, wu] : f.survivors) {
      if (u == v) continue;
      bool cut = false;
      if (f.hypersurface_degree)
        for (const auto& [p, q] : f.hypersurface_pairs) cut = cut || (p == u && q == v) || (p == v && q == u);
      if (!cut) local.push_back(wu);
    }
    if (local.size() != 3)
      throw AlgebraError("local model at P_" + v + " has " + std::to_string(local.size()) + " coordinates, not 3");
    long r = std::labs(w);
    out.push_back({QuotientPoint{r, {local[0], local[1], local[2]}}.normalized(), v});
  }
  return out;
}

}  // namespace

QuotientPoint QuotientPoint::normalized() const {
  if (r < 1) throw AlgebraError("quotient index must be positive");
  QuotientPoint out{r, {0, 0, 0}};
  if (r == 1) return out;
  bool have = false;
  for (long k = 1; k < r; ++k) {
    if (std::gcd(k, r) != 1) continue;
    std::array<long, 3> v{mod(k * w[0], r), mod(k * w[1], r), mod(k * w[2], r)};
    std::sort(v.begin(), v.end());
    if (!have || v < out.w) out.w = v;
    have = true;
  }
  return out;
}

bool QuotientPoint::is_terminal() const {
  if (r == 1) return true;
  auto n = normalized();
  for (long v : n.w)
    if (std::gcd(v, r) != 1) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (mod(n.w[static_cast<std::size_t>(i)] + n.w[static_cast<std::size_t>(j)], r) == 0) return true;
  return false;
}

std::string QuotientPoint::to_string() const {
  auto n = normalized();
  return "1/" + std::to_string(n.r) + "(" + std::to_string(n.w[0]) + "," + std::to_string(n.w[1]) + "," +
         std::to_string(n.w[2]) + ")";
}

QuotientPoint parse_quotient_point(const std::string& text) {
  static const std::regex re(R"(\s*1\s*/\s*(\d+)\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw AlgebraError("cannot read quotient singularity '" + text + "'");
  QuotientPoint q{std::stol(m[1]), {std::stol(m[2]), std::stol(m[3]), std::stol(m[4])}};
  if (q.r < 1) throw AlgebraError("quotient index must be positive in '" + text + "'");
  return q;
}

std::vector<QuotientPoint> Basket::types() const {
  std::vector<QuotientPoint> out;
  for (const auto& p : points) out.push_back(p.point.normalized());
  std::sort(out.begin(), out.end(), [](const QuotientPoint& a, const QuotientPoint& b) {
    return a.r != b.r ? a.r < b.r : a.w < b.w;
  });
  return out;
}

std::string Basket::to_string() const {
  std::string s = "{";
  bool first = true;
  for (const auto& q : types()) {
    if (!first) s += ", ";
    s += q.to_string();
    first = false;
  }
  return s + "}";
}

std::vector<Basket> track_basket(const std::vector<LinkStep>& steps, const Basket& initial, const QuotientPoint& centre,
                                 const std::array<long, 3>& x_weights) {
  std::vector<Basket> out{initial};
  Basket cur = initial;
  for (const auto& st : steps) {
    switch (st.kind) {
      case StepKind::KawamataBlowup:
        remove_type(cur, centre, "blow-up centre");
        for (std::size_t i = 0; i < 3; ++i)
          if (x_weights[i] > 1)
            cur.points.push_back({QuotientPoint{x_weights[i], {1, -centre.r, centre.r}}.normalized(),
                                  "x" + std::to_string(i + 1)});
        break;
      case StepKind::Flip:
      case StepKind::SimultaneousFlips:
        for (const auto& f : st.flips) {
          for (const auto& p : flip_side_points(f, true)) remove_type(cur, p.point, "flip " + f.base_point);
          for (const auto& p : flip_side_points(f, false)) cur.points.push_back(p);
        }
        break;
      case StepKind::DivisorialContraction: {
        const std::string& v = st.endpoint ? st.endpoint->contracted : std::string();
        std::vector<BasketPoint> kept;
        for (const auto& p : cur.points)
          if (p.locus == v) kept.push_back(p);
        cur.points = kept;
        break;
      }
      default:
        break;
    }
    out.push_back(cur);
  }
  return out;
}

}  // namespace tomlink
