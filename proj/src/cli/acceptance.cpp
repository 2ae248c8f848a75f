#include <algorithm>
#include <filesystem>
#include <numeric>
#include <regex>
#include <set>
#include <sstream>

#include "tomlink/cli.hpp"

namespace tomlink::cli {

namespace {

namespace fs = std::filesystem;

class Checker {
 public:
  explicit Checker(CriterionResult& r) : r_(r) {}

  bool check(bool ok, const std::string& what) {
    r_.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    all_ = all_ && ok;
    return ok;
  }
  void note(const std::string& what) { r_.details.push_back("     " + what); }
  bool all() const { return all_; }

 private:
  CriterionResult& r_;
  bool all_ = true;
};

CaseFile bundled(const AcceptanceOptions& o, const std::string& stem) {
  return parse_case((fs::path(o.data_dir) / "cases" / (stem + ".case")).string());
}

TraceOptions fast(const AcceptanceOptions& o, bool track_basket = true) {
  TraceOptions t;
  t.verify_unprojection = false;
  t.groebner.budget = o.budget;
  t.track_basket = track_basket;
  return t;
}

bool same_up_to_sign(const Polynomial& p, const Polynomial& q) { return (p - q).is_zero() || (p + q).is_zero(); }

bool same_up_to_scalar(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  Rational c = p.terms().front().c / q.terms().front().c;
  return (p - q * c).is_zero();
}

// Bijection between reference and computed equations up to sign.
std::vector<int> match_up_to_sign(const std::vector<Polynomial>& reference, const std::vector<Polynomial>& computed) {
  std::vector<int> match(reference.size(), -1);
  std::vector<bool> used(computed.size(), false);
  for (std::size_t i = 0; i < reference.size(); ++i)
    for (std::size_t j = 0; j < computed.size(); ++j)
      if (!used[j] && same_up_to_sign(reference[i], computed[j])) {
        match[i] = static_cast<int>(j);
        used[j] = true;
        break;
      }
  return match;
}

const LinkStep* find_step(const LinkTrace& tr, StepKind k) {
  for (const auto& st : tr.steps)
    if (st.kind == k) return &st;
  return nullptr;
}

Rational evaluate(const Polynomial& p, const std::vector<Rational>& x) {
  Rational sum = 0;
  for (const auto& t : p.terms()) {
    Rational v = t.c;
    for (std::size_t i = 0; i < x.size(); ++i)
      for (int k = 0; k < t.m.e[i]; ++k) v *= x[i];
    sum += v;
  }
  return sum;
}

int rank_of(std::vector<std::vector<Rational>> a) {
  int rank = 0;
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows); ++c) {
    std::size_t piv = static_cast<std::size_t>(rank);
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
    const auto& pr = a[static_cast<std::size_t>(rank)];
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == static_cast<std::size_t>(rank) || a[i][c] == 0) continue;
      Rational f = a[i][c] / pr[c];
      for (std::size_t k = c; k < cols; ++k) a[i][k] -= f * pr[k];
    }
    ++rank;
  }
  return rank;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

FanoCase relabeled(const FanoCase& fc) {
  if (fc.fmt.k == 1) return fc;
  FanoCase out = fc;
  std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
  std::swap(perm[1], perm[static_cast<std::size_t>(fc.fmt.k)]);
  out.M = fc.M.permuted(perm);
  out.fmt.k = 1;
  return out;
}

std::vector<Basket> basket_milestones(const LinkTrace& tr) {
  // X, Y_1, after the flip, endpoint
  std::vector<Basket> out{tr.baskets.front(), tr.baskets.at(1)};
  for (std::size_t i = 0; i < tr.steps.size(); ++i)
    if (tr.steps[i].kind == StepKind::Flip) out.push_back(tr.baskets.at(i + 1));
  out.push_back(tr.baskets.back());
  return out;
}

void criterion1(const AcceptanceOptions& o, Checker& c) {
  auto cf = bundled(o, "10985");
  auto tr = trace_link(cf.fano, fast(o));
  const RingPtr& R = tr.scroll.ring;
  const std::vector<std::string> reference_text{
      "t*y4^2 + x1*x2^2*y4 - x1*y2 - x2^3*y4 + x2*x3*y3",
      "-t*y4*y3 - x1*y1 - x2*x3*y2 + x3^4*y4",
      "-t*y4*y2 + t*y3^2 + x1^5*y4 + x2^3*y2 - t*x3^4*y3",
      "t*y4*y1 + t*y3*y2 + x1^4*x2*x3*y4 + x1*x2^2*y1 + x2^3*x3*y2 - x2^3*y1 - x3^4*y2",
      "x1^4*y4^2 + x2^2*y4*y2 - y3*y1 - y2^2"};
  std::vector<Polynomial> reference, pf(tr.Y.generators().begin(), tr.Y.generators().begin() + 5);
  for (const auto& s : reference_text) reference.push_back(parse_polynomial(s, R));
  auto match = match_up_to_sign(reference, pf);
  for (std::size_t i = 0; i < reference.size(); ++i) {
    bool ok = match[i] >= 0;
    std::string what = "Y1 pfaffian equation " + std::to_string(i + 1) + " matches up to sign";
    if (!ok) {
      what += "; reference " + reference[i].to_string();
      if (!is_homogeneous(reference[i])) what += " (not bihomogeneous)";
    }
    c.check(ok, what);
  }
  if (std::count(match.begin(), match.end(), -1) > 0) {
    std::vector<std::string> rest;
    for (std::size_t j = 0; j < pf.size(); ++j)
      if (std::find(match.begin(), match.end(), static_cast<int>(j)) == match.end()) rest.push_back(pf[j].to_string());
    c.note("unmatched computed: " + join(rest, " ; "));
  }
  const LinkStep* flop = find_step(tr, StepKind::Flop);
  c.check(flop && flop->flop_count == 24, "flop count = 24 (got " + std::to_string(flop ? flop->flop_count : -1) + ")");
  const LinkStep* flip = find_step(tr, StepKind::Flip);
  std::string fw = flip && flip->flips.size() == 1 ? flip->flips[0].weights_string() : "none";
  c.check(fw == "(6,1,1,-1,-3;3)", "flip weights (6,1,1,-1,-3;3) (got " + fw + ")");
  bool iso = false;
  for (const auto& st : tr.steps) iso = iso || (st.kind == StepKind::Isomorphism && st.wall == "y2");
  c.check(iso, "y2 wall is an isomorphism");
  const auto& last = tr.steps.back();
  bool ep_ok = last.kind == StepKind::DivisorialContraction && last.endpoint.has_value();
  c.check(ep_ok, "last step is a divisorial contraction to a Fano 3-fold");
  if (ep_ok) {
    const auto& ep = *last.endpoint;
    c.check(ep.ambient_string() == "P^5(1,1,1,1,2,3)", "endpoint ambient P^5(1,1,1,1,2,3) (got " + ep.ambient_string() + ")");
    bool deg4 = ep.equations.size() == 2;
    for (const auto& e : ep.equations) deg4 = deg4 && is_homogeneous(e) && bidegree_of(e).top == 4;
    c.check(deg4, "endpoint cut out by two degree-4 equations");
    std::vector<std::string> sigma{
        "v1*v2^2*v4 - v1*v4*v5 - v1*v6 - v2^3*v4 + v2*v3*v4^2 - v2*v3*v5 + v3^4", "v1^4 + v2^2*v5 - v4*v6 - v5^2"};
    // The reference coordinates run through the ambient weights in increasing order.
    std::vector<int> order(static_cast<std::size_t>(ep.ring->nvars()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int u, int v) { return ep.ring->weight(0, u) < ep.ring->weight(0, v); });
    std::vector<std::string> coords;
    for (int v : order) coords.push_back(ep.ring->name(v));
    std::vector<Polynomial> pair;
    for (auto s : sigma) {
      for (int i = 6; i >= 1; --i) s = std::regex_replace(s, std::regex("v" + std::to_string(i)), coords.at(static_cast<std::size_t>(i - 1)));
      pair.push_back(parse_polynomial(s, ep.ring));
    }
    auto m = match_up_to_sign(pair, ep.equations);
    c.check(m[0] >= 0 && m[1] >= 0, "endpoint equations match the reference pair up to sign, coordinates " + join(coords, ","));
  }
  std::vector<std::string> got;
  for (const auto& b : basket_milestones(tr)) got.push_back(b.to_string());
  const std::vector<std::string> want{"{1/2(1,1,1), 1/6(1,1,5)}", "{1/6(1,1,5)}", "{1/3(1,1,2)}", "{1/3(1,1,2)}"};
  c.check(got == want, "basket evolution X, Y1, after flip, X': " + join(got, " -> "));
}

void criterion2(const AcceptanceOptions& o, Checker& c) {
  auto tr = trace_link(bundled(o, "20652").fano, fast(o));
  const LinkStep* flop = find_step(tr, StepKind::Flop);
  c.check(flop && flop->flop_count == 7, "flop count = 7 (got " + std::to_string(flop ? flop->flop_count : -1) + ")");
  const LinkStep* sim = find_step(tr, StepKind::SimultaneousFlips);
  bool both = sim && sim->flips.size() == 2;
  for (std::size_t i = 0; both && i < 2; ++i) both = sim->flips[i].weights_string() == "(2,1,-1,-1)";
  c.check(both, "simultaneous flips, both (2,1,-1,-1)");
  const auto& last = tr.steps.back();
  c.check(last.kind == StepKind::DelPezzoFibration && last.dp_degree == 5,
          "del Pezzo fibration of degree 5 (got " + last.summary() + ")");
}

void criterion3(const AcceptanceOptions& o, Checker& c) {
  auto tr = trace_link(bundled(o, "24097").fano, fast(o));
  const LinkStep* flop = find_step(tr, StepKind::Flop);
  c.check(flop && flop->flop_count == 8, "flop count = 8 (got " + std::to_string(flop ? flop->flop_count : -1) + ")");
  const LinkStep* flip = find_step(tr, StepKind::Flip);
  std::string fw = flip && flip->flips.size() == 1 ? flip->flips[0].weights_string() : "none";
  c.check(fw == "(2,1,-1,-1)", "flip (2,1,-1,-1) (got " + fw + ")");
  const auto& last = tr.steps.back();
  if (!c.check(last.kind == StepKind::ConicBundle && last.conic && !last.conic->structural_only,
               "conic bundle with computed discriminant"))
    return;
  const auto& cd = *last.conic;
  std::map<std::string, std::string> want{{"y2", "-1/4*y3^4*(1 + y3)"}, {"y3", "-1/4*y2*(1 + y2)"}};
  std::map<std::string, std::string> expanded{{"y2", "-1/4*y3^5 - 1/4*y3^4"}, {"y3", "-1/4*y2^2 - 1/4*y2"}};
  std::vector<long> degrees;
  for (std::size_t i = 0; i < 2; ++i) {
    const auto& patch = cd.patch_vars[i];
    const Polynomial& det = cd.determinants[i];
    degrees.push_back(det.total_degree());
    auto it = expanded.find(patch);
    bool ok = it != expanded.end() && same_up_to_scalar(det, parse_polynomial(it->second, det.ring()));
    c.check(ok, "patch " + patch + " determinant proportional to " + (it != expanded.end() ? want[patch] : "?") +
                    " (got " + det.to_string() + ")");
  }
  c.check(cd.delta == 6, "discriminant degree 6 (got " + std::to_string(cd.delta) + ")");
  std::string overlap = std::to_string(degrees[0]) + "+" + std::to_string(degrees[1]) + "-" + std::to_string(cd.shared_roots);
  c.check(overlap == "5+7-1", "overlap correction 5+7-1 (got " + overlap + " = " + std::to_string(cd.delta_cross_check) + ")");
}

void criterion4(const AcceptanceOptions& o, Checker& c) {
  for (const std::string id : {"10985", "20652"}) {
    auto tr = trace_link(bundled(o, id).fano, fast(o));
    GroebnerOptions g;
    g.budget = o.budget;
    auto r = saturation_oracle(tr.unprojection, tr.scroll, tr.Y, g);
    c.check(r.equal, id + ": <h1..h9> equals the t-saturation of the pullback (saturation basis size " +
                         std::to_string(r.saturation_size) + ")");
  }
}

struct WeightSystem {
  std::string id;
  long a, b, c, r;
  std::array<long, 4> d;
  WeightMatrix5 w;
  int k;
};

std::vector<WeightSystem> weight_systems(const AcceptanceOptions& o) {
  std::vector<WeightSystem> out;
  for (const auto& path : bundled_cases(o.data_dir)) {
    CaseFile cf = parse_case(path);
    const FanoCase& f = cf.fano;
    out.push_back({cf.id, f.a, f.b, f.c, f.r, f.d, cf.matrix_weights, cf.tom_index});
  }
  return out;
}

void criterion5(const AcceptanceOptions& o, Checker& c) {
  auto systems = weight_systems(o);
  int n = 0, passed = 0;
  for (std::uint64_t seed = 1; n < 25; ++seed) {
    const auto& ws = systems[(seed - 1) % systems.size()];
    TomFormat fmt;
    fmt.k = ws.k;
    auto M = build_general_tom(ws.w, fmt, z_ring_for(ws.a, ws.b, ws.c, ws.d), 1000 + seed);
    ++n;
    std::vector<std::string> bad;
    if (!check_tom(M, fmt)) bad.push_back("not Tom");
    for (const auto& e : syzygy_residual(M))
      if (!e.is_zero()) {
        bad.push_back("M*Pf != 0");
        break;
      }
    auto res = build_unprojection(M, fmt, ws.r);
    VerifyOptions vo;
    vo.groebner.budget = o.budget;
    vo.check_elimination = false;
    auto rep = verify_unprojection(res, vo);
    if (!rep.proportional_ok) bad.push_back("p_i H_j != p_j H_i");
    if (!rep.degrees_ok) bad.push_back("deg g_j != r + d_j");
    if (!rep.consistency_ok) bad.push_back("y_i g_j - y_j g_i not in <Pf>");
    if (bad.empty()) ++passed;
    else c.check(false, ws.id + " seed " + std::to_string(1000 + seed) + ": " + join(bad, ", "));
  }
  c.check(passed == n, std::to_string(passed) + "/" + std::to_string(n) +
                           " seeded general members satisfy all four identities, " + std::to_string(systems.size()) +
                           " weight systems");
}

void criterion6(const AcceptanceOptions& o, Checker& c) {
  const std::vector<std::pair<CaseTag, std::string>> per_tag{
      {CaseTag::I, "10985"},          {CaseTag::II, "synthetic_ii"}, {CaseTag::III, "synthetic_iii"},
      {CaseTag::IV, "synthetic_iv"},  {CaseTag::V, "20652"},         {CaseTag::VI, "24097"},
      {CaseTag::VII, "synthetic_vii"}, {CaseTag::VIII, "synthetic_viii"}};
  for (const auto& [tag, stem] : per_tag) {
    auto cf = bundled(o, stem);
    auto tr = trace_link(cf.fano, fast(o, cf.basket_complete));
    std::string chain;
    for (const auto& st : tr.steps) chain += (chain.empty() ? "" : " ") + st.summary();
    c.check(tr.tag == tag && tr.template_ok,
            tag_name(tag) + " " + cf.id + ": " + chain + (tr.template_ok ? "" : " [" + join(tr.template_notes, "; ") + "]"));
  }
  auto tr = trace_link(bundled(o, "10985").fano, fast(o));
  bool fired = false;
  for (const auto& st : tr.steps) fired = fired || (st.wall == "y2" && st.kind == StepKind::Isomorphism && st.predicted_skip);
  c.check(fired, "10985: configuration (b) skipped-flip rule fires on the y2 wall");
  for (const std::string id : {"1218", "1413", "6865"}) {
    auto cf = bundled(o, id);
    auto t = trace_link(cf.fano, fast(o, cf.basket_complete));
    bool skip = t.steps.size() > 2 && t.steps[1].kind == StepKind::Flop && t.steps[2].kind == StepKind::Isomorphism &&
                t.steps[2].wall == "y1" && t.steps[2].predicted_skip;
    std::string chain;
    for (const auto& st : t.steps) chain += (chain.empty() ? "" : " ") + st.summary();
    c.check(skip && t.template_ok, id + ": flop then isomorphism over the y1 wall: " + chain);
  }
}

void criterion7(const AcceptanceOptions& o, Checker& c) {
  int checked = 0;
  auto check_case = [&](const FanoCase& fc0, const std::string& label) {
    FanoCase fc = relabeled(fc0);
    auto res = build_unprojection(fc.M, fc.fmt, fc.r);
    auto del = compute_deltas(res.g, fc);
    bool ge = true, eq = true;
    for (std::size_t j = 0; j < 4; ++j) {
      ge = ge && del[j] >= fc.d[j];
      eq = eq && del[j] == fc.r + fc.d[j];
    }
    ++checked;
    if (!(ge && eq)) c.check(false, label + ": deltas " + std::to_string(del[0]) + "," + std::to_string(del[1]) + "," +
                                        std::to_string(del[2]) + "," + std::to_string(del[3]));
  };
  for (const auto& path : bundled_cases(o.data_dir)) {
    CaseFile cf = parse_case(path);
    check_case(cf.fano, cf.id);
  }
  auto systems = weight_systems(o);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto& ws = systems[(seed - 1) % systems.size()];
    FanoCase fc;
    fc.id = ws.id;
    fc.a = ws.a;
    fc.b = ws.b;
    fc.c = ws.c;
    fc.d = ws.d;
    fc.r = ws.r;
    fc.fmt.k = ws.k;
    fc.M = build_general_tom(ws.w, fc.fmt, z_ring_for(ws.a, ws.b, ws.c, ws.d), 1000 + seed);
    check_case(fc, ws.id + " seed " + std::to_string(1000 + seed));
  }
  c.check(c.all(), std::to_string(checked) + " cases with delta_j >= d_j and delta_j = r + d_j");
}

void criterion8(const AcceptanceOptions& o, Checker& c) {
  for (const auto& path : bundled_cases(o.data_dir)) {
    CaseFile cf = parse_case(path);
    const FanoCase& fc0 = cf.fano;
    if (fc0.a != 1 || fc0.b != 1 || fc0.c != 1 || cf.structural) continue;
    FanoCase fc = relabeled(fc0);
    FlopOptions fo;
    fo.groebner.budget = o.budget;
    auto f = count_flops(fc.M, fc.fmt, fo);
    bool in23 = f.samples == 20 && static_cast<int>(f.sample_ranks.size()) == 20;
    for (int rk : f.sample_ranks) in23 = in23 && (rk == 2 || rk == 3);
    // Rank exactly 2 on the box points of the node scheme, 3 elsewhere.
    std::vector<Polynomial> minors;
    for (int sr = 0; sr < 4; ++sr)
      for (int sc = 0; sc < 4; ++sc) {
        std::vector<std::vector<Polynomial>> sub;
        for (int i = 0; i < 4; ++i) {
          if (i == sr) continue;
          std::vector<Polynomial> row;
          for (int j = 0; j < 4; ++j)
            if (j != sc) row.push_back(f.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
          sub.push_back(row);
        }
        minors.push_back(determinant(sub, f.d_ring));
      }
    auto G = buchberger(Ideal(f.d_ring, minors), MatrixOrder::grevlex(f.d_ring->nvars()), fo.groebner);
    int on_locus = 0, mismatches = 0, low = 0;
    const long B = 3;
    for (long x = -B; x <= B; ++x)
      for (long y = -B; y <= B; ++y)
        for (long z = -B; z <= B; ++z) {
          long lead = x ? x : (y ? y : z);
          if (lead <= 0 || std::gcd(std::gcd(std::abs(x), std::abs(y)), std::abs(z)) != 1) continue;
          std::vector<Rational> pt{Rational(x), Rational(y), Rational(z)};
          std::vector<std::vector<Rational>> a(4, std::vector<Rational>(4));
          for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) a[i][j] = evaluate(f.A[i][j], pt);
          int rk = rank_of(a);
          bool node = true;
          for (const auto& g : G.elements()) node = node && evaluate(g, pt) == 0;
          if (rk < 2) ++low;
          if (node) ++on_locus;
          if ((rk == 2) != node) ++mismatches;
        }
    c.check(in23 && f.samples_rank_three == 20 && low == 0 && mismatches == 0 && on_locus <= f.count,
            cf.id + ": 20 sampled ranks in {2,3} (" + std::to_string(f.samples_rank_three) + " of rank 3), " +
                std::to_string(on_locus) + " box points of the node scheme all of rank 2, " + std::to_string(f.count) +
                " nodes");
  }
}

void criterion9(const AcceptanceOptions& o, Checker& c) {
  int rows = 0;
  for (const auto& path : bundled_cases(o.data_dir)) {
    if (fs::path(path).filename().string().rfind("picard_", 0) != 0) continue;
    CaseFile cf = parse_case(path);
    auto tr = structural_trace(cf.fano);
    auto pic = picard_report(cf.fano, tr, true);
    ++rows;
    c.check(pic.determined && pic.rho == 1, cf.id + ": " + (pic.determined ? "rho = " + std::to_string(pic.rho)
                                                                           : std::string("undetermined")) +
                                                " via " + tr.steps.back().summary() + ", codim " +
                                                std::to_string(tr.steps.back().endpoint ? tr.steps.back().endpoint->codimension : -1));
  }
  c.check(rows == 12, std::to_string(rows) + " table rows");
}

const char* kTitles[10] = {"",
                           "10985 Tom_1 pipeline",
                           "20652 Tom_1 flops, simultaneous flips, dP5",
                           "24097 Tom_1 flops, flip, conic bundle",
                           "saturation oracle on 10985 and 20652",
                           "unprojection identities on 25 general members",
                           "classifier totality and link template",
                           "delta_j = r + d_j on all seeded cases",
                           "rank of A on D",
                           "Picard rank 1 on the table rows"};

}  // namespace

CriterionResult criterion(int number, const AcceptanceOptions& opts) {
  CriterionResult r;
  r.number = number;
  Checker c(r);
  try {
    switch (number) {
      case 1: criterion1(opts, c); break;
      case 2: criterion2(opts, c); break;
      case 3: criterion3(opts, c); break;
      case 4:
        if (opts.skip_saturation_oracle) {
          r.skipped = true;
          r.details.push_back("skipped: saturation oracle disabled");
          return r;
        }
        criterion4(opts, c);
        break;
      case 5: criterion5(opts, c); break;
      case 6: criterion6(opts, c); break;
      case 7: criterion7(opts, c); break;
      case 8: criterion8(opts, c); break;
      case 9: criterion9(opts, c); break;
      default: throw std::invalid_argument("no criterion " + std::to_string(number));
    }
  } catch (const BudgetExceeded& e) {
    r.budget_exceeded = true;
    c.check(false, std::string("budget exceeded: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception& e) {
    c.check(false, std::string("error: ") + e.what());
  }
  r.pass = c.all() && !r.details.empty();
  return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (int i = 1; i <= 9; ++i) out.push_back(criterion(i, opts));
  return out;
}

std::string format_criterion(const CriterionResult& r) {
  std::ostringstream out;
  out << (r.skipped ? "SKIP" : r.pass ? "PASS" : "FAIL") << " criterion " << r.number << ": "
      << (r.number >= 1 && r.number <= 9 ? kTitles[r.number] : "") << "\n";
  for (const auto& d : r.details) out << "    " << d << "\n";
  return out.str();
}

}  // namespace tomlink::cli
