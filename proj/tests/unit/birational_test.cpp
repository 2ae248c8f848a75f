#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tomlink/birational.hpp"

using namespace tomlink;

namespace {

const LinkStep& step(const LinkTrace& tr, StepKind kind) {
  for (const auto& st : tr.steps)
    if (st.kind == kind) return st;
  throw std::runtime_error("step missing");
}

bool same_up_to_scalar(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero()) return p.is_zero() && q.is_zero();
  Rational c = p.terms().front().c / q.terms().front().c;
  return (p - q * c).is_zero();
}

bool same_up_to_sign(const Polynomial& p, const Polynomial& q) { return (p - q).is_zero() || (p + q).is_zero(); }

// Counts P^2(F_p) points where every polynomial vanishes, by exhaustion.
long fp_points(const std::vector<Polynomial>& polys, long p) {
  auto eval = [&](const Polynomial& f, const std::array<long, 3>& x) {
    long sum = 0;
    for (const auto& t : f.terms()) {
      mpz_class num = t.c.get_num() % p, den = t.c.get_den() % p;
      long v = (num.get_si() % p + p) % p;
      long dinv = 1, d = (den.get_si() % p + p) % p;
      for (long k = 0; k < p - 2; ++k) dinv = dinv * d % p;
      v = v * dinv % p;
      for (std::size_t i = 0; i < 3; ++i)
        for (int k = 0; k < t.m.e[i]; ++k) v = v * x[i] % p;
      sum = (sum + v) % p;
    }
    return sum;
  };
  long count = 0;
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b)
      for (long c = 0; c < p; ++c) {
        // Normalize: first nonzero coordinate is 1.
        std::array<long, 3> x{a, b, c};
        if (a == 0 && b == 0 && c == 0) continue;
        long lead = a ? a : (b ? b : c);
        if (lead != 1) continue;
        bool all = true;
        for (const auto& f : polys) all = all && eval(f, x) == 0;
        if (all) ++count;
      }
  return count;
}

std::vector<Polynomial> three_minors(const FlopAnalysis& f) {
  std::vector<Polynomial> out;
  for (int skip_r = 0; skip_r < 4; ++skip_r)
    for (int skip_c = 0; skip_c < 4; ++skip_c) {
      std::vector<std::vector<Polynomial>> sub;
      for (int i = 0; i < 4; ++i) {
        if (i == skip_r) continue;
        std::vector<Polynomial> row;
        for (int j = 0; j < 4; ++j)
          if (j != skip_c) row.push_back(f.A[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        sub.push_back(row);
      }
      out.push_back(determinant(sub, f.d_ring));
    }
  return out;
}

}  // namespace

TEST(QuotientPoint, NormalizesUnderUnits) {
  EXPECT_EQ(parse_quotient_point("1/6(5,1,1)").to_string(), "1/6(1,1,5)");
  EXPECT_EQ(parse_quotient_point("1/3(2,1,1)").to_string(), "1/3(1,1,2)");
  EXPECT_EQ(parse_quotient_point("1/5(2,3,1)"), parse_quotient_point("1/5(1,4,3)"));
  EXPECT_NE(parse_quotient_point("1/5(1,1,4)"), parse_quotient_point("1/5(1,2,3)"));
}

TEST(QuotientPoint, TerminalLemma) {
  EXPECT_TRUE(parse_quotient_point("1/2(1,1,1)").is_terminal());
  EXPECT_TRUE(parse_quotient_point("1/7(1,3,4)").is_terminal());
  EXPECT_FALSE(parse_quotient_point("1/3(1,1,1)").is_terminal());
  EXPECT_FALSE(parse_quotient_point("1/4(1,2,3)").is_terminal());
}

TEST(QuotientPoint, ParseErrors) {
  EXPECT_THROW(parse_quotient_point("1/6(1,1)"), AlgebraError);
  EXPECT_THROW(parse_quotient_point("2/6(1,1,5)"), AlgebraError);
}

TEST(Scroll, KawamataGradings) {
  auto s = kawamata_scroll(fixtures::fano_20652());
  const Ring& F = *s.ring;
  std::vector<long> top, bottom;
  for (int v = 0; v < F.nvars(); ++v) {
    top.push_back(F.weight(0, v));
    bottom.push_back(F.weight(1, v));
  }
  EXPECT_EQ(top, (std::vector<long>{0, 2, 1, 1, 1, 2, 2, 1, 1}));
  EXPECT_EQ(bottom, (std::vector<long>{1, 1, 0, 0, 0, -1, -1, -1, -1}));
  auto s2 = kawamata_scroll(fixtures::fano_10985());
  EXPECT_EQ(s2.ring->weight(0, s2.ring->require_index("y1")), 6);
  EXPECT_EQ(s2.ring->weight(0, s2.ring->require_index("s")), 2);
}

TEST(Blowup, DeltasAreRPlusD) {
  for (auto fc : {fixtures::fano_10985(), fixtures::fano_20652(), fixtures::fano_24097()}) {
    auto res = build_unprojection(fc.M, fc.fmt, fc.r);
    auto del = compute_deltas(res.g, fc);
    for (std::size_t j = 0; j < 4; ++j) {
      EXPECT_GE(del[j], fc.d[j]);
      EXPECT_EQ(del[j], fc.r + fc.d[j]) << fc.id;
    }
  }
  auto fc = fixtures::fano_10985();
  auto del = compute_deltas(build_unprojection(fc.M, fc.fmt, fc.r).g, fc);
  EXPECT_EQ(del, (std::array<long, 4>{8, 7, 6, 5}));
}

TEST(Blowup, GeneratorsAreBihomogeneous) {
  for (auto fc : {fixtures::fano_10985(), fixtures::fano_20652(), fixtures::fano_24097()}) {
    auto res = build_unprojection(fc.M, fc.fmt, fc.r);
    auto scroll = kawamata_scroll(fc);
    Ideal Y = blowup_ideal(res, scroll, compute_deltas(res.g, fc));
    ASSERT_EQ(Y.generators().size(), 9u);
    for (const auto& h : Y.generators()) EXPECT_TRUE(h.is_zero() || is_homogeneous(h)) << h.to_string();
  }
}

TEST(Blowup, PfaffianPartFor10985) {
  auto fc = fixtures::fano_10985();
  auto res = build_unprojection(fc.M, fc.fmt, fc.r);
  auto scroll = kawamata_scroll(fc);
  Ideal Y = blowup_ideal(res, scroll, compute_deltas(res.g, fc));
  const auto& R = scroll.ring;
  // Reference equations 1, 2 and 5 for this member; t-adic strict transforms of Pf_1..Pf_5.
  EXPECT_TRUE(same_up_to_sign(Y.generators()[4], parse_polynomial("t*y4^2 + x1*x2^2*y4 - x1*y2 - x2^3*y4 + x2*x3*y3", R)));
  EXPECT_TRUE(same_up_to_sign(Y.generators()[3], parse_polynomial("-t*y4*y3 - x1*y1 - x2*x3*y2 + x3^4*y4", R)));
  EXPECT_TRUE(same_up_to_sign(Y.generators()[0], parse_polynomial("x1^4*y4^2 + x2^2*y4*y2 - y3*y1 - y2^2", R)));
  // Reference equation 3 without the extra t on its last term.
  EXPECT_TRUE(same_up_to_sign(Y.generators()[2],
                              parse_polynomial("-t*y4*y2 + t*y3^2 + x1^5*y4 + x2^3*y2 - x3^4*y3", R)));
}

TEST(Blowup, SaturationOracle24097) {
  auto fc = fixtures::fano_24097();
  auto res = build_unprojection(fc.M, fc.fmt, fc.r);
  auto scroll = kawamata_scroll(fc);
  Ideal Y = blowup_ideal(res, scroll, compute_deltas(res.g, fc));
  auto oracle = saturation_oracle(res, scroll, Y);
  EXPECT_TRUE(oracle.equal) << oracle.detail;
}

TEST(Blowup, SaturationOracleRejectsWrongIdeal) {
  auto fc = fixtures::fano_24097();
  auto res = build_unprojection(fc.M, fc.fmt, fc.r);
  auto scroll = kawamata_scroll(fc);
  Ideal Y = blowup_ideal(res, scroll, compute_deltas(res.g, fc));
  std::vector<Polynomial> gens = Y.generators();
  gens.pop_back();
  EXPECT_FALSE(saturation_oracle(res, scroll, Ideal(scroll.ring, gens)).equal);
}

TEST(Classify, AllEightTags) {
  EXPECT_EQ(classify_case({6, 5, 4, 3}), CaseTag::I);
  EXPECT_EQ(classify_case({3, 2, 2, 1}), CaseTag::II);
  EXPECT_EQ(classify_case({3, 3, 2, 1}), CaseTag::III);
  EXPECT_EQ(classify_case({5, 3, 2, 2}), CaseTag::IV);
  EXPECT_EQ(classify_case({2, 2, 1, 1}), CaseTag::V);
  EXPECT_EQ(classify_case({2, 1, 1, 1}), CaseTag::VI);
  EXPECT_EQ(classify_case({2, 2, 2, 1}), CaseTag::VII);
  EXPECT_EQ(classify_case({2, 2, 2, 2}), CaseTag::VIII);
  EXPECT_THROW(classify_case({1, 2, 3, 4}), AlgebraError);
  EXPECT_EQ(tag_name(CaseTag::VIII), "(viii)");
}

TEST(Classify, WeightConfigurations) {
  auto c1 = detect_weight_config(fixtures::case_10985().w, {6, 5, 4, 3});
  EXPECT_EQ(c1.kind, WeightConfig::Kind::B);
  EXPECT_EQ(c1.pi, 5);
  auto c2 = detect_weight_config(fixtures::case_20652().w, {2, 2, 1, 1});
  EXPECT_EQ(c2.kind, WeightConfig::Kind::A);
  EXPECT_GE(c2.matches.size(), 2u);
  auto c3 = detect_weight_config(fixtures::case_24097().w, {2, 1, 1, 1});
  EXPECT_EQ(c3.kind, WeightConfig::Kind::Neither);
  EXPECT_TRUE(c3.matches.empty());
}

TEST(Classify, WeightGroups) {
  EXPECT_EQ(ideal_weight_groups({3, 2, 2, 1}), (std::vector<std::vector<int>>{{0}, {1, 2}, {3}}));
  EXPECT_EQ(ideal_weight_groups({2, 2, 2, 2}), (std::vector<std::vector<int>>{{0, 1, 2, 3}}));
}

TEST(Flops, NodeCounts) {
  EXPECT_EQ(count_flops(fixtures::matrix(fixtures::case_10985()), TomFormat{}).count, 24);
  EXPECT_EQ(count_flops(fixtures::matrix(fixtures::case_20652()), TomFormat{}).count, 7);
}

TEST(Flops, NodeCount24097AgainstPointCount) {
  auto f = count_flops(fixtures::matrix(fixtures::case_24097()), TomFormat{});
  // Over F_7 the rank-2 locus of A splits completely (it needs cube roots of unity).
  EXPECT_EQ(fp_points(three_minors(f), 7), 6);
  EXPECT_EQ(f.count, 6);
}

TEST(Flops, RankCertificates) {
  for (const auto& c : {fixtures::case_10985(), fixtures::case_20652(), fixtures::case_24097()}) {
    auto f = count_flops(fixtures::matrix(c), TomFormat{});
    EXPECT_TRUE(f.det_vanishes) << c.id;
    EXPECT_TRUE(f.rank_at_least_two) << c.id;
    ASSERT_EQ(f.samples, 20);
    for (int rk : f.sample_ranks) EXPECT_TRUE(rk == 2 || rk == 3);
    EXPECT_EQ(f.samples_rank_three, 20);
  }
}

TEST(Flops, SampleRanksAreDeterministic) {
  FlopOptions o;
  o.seed = 5;
  auto a = count_flops(fixtures::matrix(fixtures::case_20652()), TomFormat{}, o);
  auto b = count_flops(fixtures::matrix(fixtures::case_20652()), TomFormat{}, o);
  EXPECT_EQ(a.sample_ranks, b.sample_ranks);
}

TEST(Walls, HypersurfaceFlipAndSkip10985) {
  auto tr = trace_link(fixtures::fano_10985(), fixtures::fast_trace());
  ASSERT_EQ(tr.steps.size(), 5u);
  const auto& flip = tr.steps[2];
  ASSERT_EQ(flip.kind, StepKind::Flip);
  ASSERT_EQ(flip.flips.size(), 1u);
  EXPECT_EQ(flip.flips[0].weights_string(), "(6,1,1,-1,-3;3)");
  EXPECT_EQ(flip.flips[0].eliminated, (std::vector<std::string>{"s", "x1", "y3"}));
  EXPECT_EQ(tr.steps[3].kind, StepKind::Isomorphism);
  EXPECT_EQ(tr.steps[3].wall, "y2");
  EXPECT_TRUE(tr.steps[3].predicted_skip);
}

TEST(Walls, SimultaneousFlips20652) {
  auto tr = trace_link(fixtures::fano_20652(), fixtures::fast_trace());
  const auto& st = step(tr, StepKind::SimultaneousFlips);
  ASSERT_EQ(st.flips.size(), 2u);
  for (const auto& f : st.flips) EXPECT_EQ(f.weights_string(), "(2,1,-1,-1)");
  EXPECT_TRUE(st.flips[1].mirrored);
}

TEST(Walls, Flip24097) {
  auto tr = trace_link(fixtures::fano_24097(), fixtures::fast_trace());
  const auto& st = step(tr, StepKind::Flip);
  ASSERT_EQ(st.flips.size(), 1u);
  EXPECT_EQ(st.flips[0].weights_string(), "(2,1,-1,-1)");
  EXPECT_FALSE(st.flips[0].hypersurface_degree.has_value());
}

TEST(Endpoint, Fano10985) {
  auto tr = trace_link(fixtures::fano_10985(), fixtures::fast_trace());
  const auto& st = tr.steps.back();
  ASSERT_EQ(st.kind, StepKind::DivisorialContraction);
  EXPECT_EQ(st.contraction_type, "(2,0)");
  ASSERT_TRUE(st.endpoint.has_value());
  const auto& ep = *st.endpoint;
  EXPECT_EQ(ep.ambient_string(), "P^5(1,1,1,1,2,3)");
  EXPECT_EQ(ep.codimension, 2);
  EXPECT_TRUE(ep.gorenstein);
  EXPECT_EQ(ep.eliminated, (std::vector<std::string>{"s", "t"}));
  ASSERT_EQ(ep.equations.size(), 2u);
  // Sigma coordinates (x1, x2, x3, y3, y2, y1).
  auto e1 = parse_polynomial(
      "x1*x2^2*y3 - x1*y3*y2 - x1*y1 - x2^3*y3 + x2*x3*y3^2 - x2*x3*y2 + x3^4", ep.ring);
  auto e2 = parse_polynomial("x1^4 + x2^2*y2 - y3*y1 - y2^2", ep.ring);
  int found = 0;
  for (const auto& e : ep.equations) found += same_up_to_sign(e, e1) || same_up_to_sign(e, e2);
  EXPECT_EQ(found, 2);
}

TEST(Endpoint, DelPezzoDegree20652) {
  auto tr = trace_link(fixtures::fano_20652(), fixtures::fast_trace());
  const auto& st = tr.steps.back();
  ASSERT_EQ(st.kind, StepKind::DelPezzoFibration);
  EXPECT_EQ(st.dp_degree, 5);
  EXPECT_EQ(st.wall, "y3,y4");
}

TEST(Endpoint, ConicBundle24097) {
  auto tr = trace_link(fixtures::fano_24097(), fixtures::fast_trace());
  const auto& st = tr.steps.back();
  ASSERT_EQ(st.kind, StepKind::ConicBundle);
  ASSERT_TRUE(st.conic.has_value());
  const auto& cd = *st.conic;
  EXPECT_EQ(cd.delta, 6);
  EXPECT_EQ(cd.delta_cross_check, 6);
  EXPECT_EQ(cd.shared_roots, 1);
  // Determinants of the symmetric matrices of the two patch conics, computed by hand.
  auto Ry3 = cd.determinants[0].ring();
  auto Ry2 = cd.determinants[1].ring();
  EXPECT_TRUE(same_up_to_scalar(cd.determinants[0], parse_polynomial("y3^5 - y3^4", Ry3)));
  EXPECT_TRUE(same_up_to_scalar(cd.determinants[1], parse_polynomial("y2^2 - y2", Ry2)));
}

TEST(Basket, Evolution10985) {
  auto tr = trace_link(fixtures::fano_10985(), fixtures::fast_trace());
  std::vector<std::string> got;
  for (const auto& b : tr.baskets) got.push_back(b.to_string());
  EXPECT_EQ(got, (std::vector<std::string>{"{1/2(1,1,1), 1/6(1,1,5)}", "{1/6(1,1,5)}", "{1/6(1,1,5)}", "{1/3(1,1,2)}",
                                           "{1/3(1,1,2)}", "{1/3(1,1,2)}"}));
}

TEST(Basket, SimultaneousFlipsRemoveHalfPoints) {
  auto tr = trace_link(fixtures::fano_20652(), fixtures::fast_trace());
  ASSERT_EQ(tr.baskets.size(), 5u);
  EXPECT_EQ(tr.baskets[2].points.size(), 2u);
  EXPECT_TRUE(tr.baskets[3].points.empty());
}

TEST(Basket, MissingContractedPointIsAnError) {
  auto fc = fixtures::fano_24097();
  fc.basket.points.pop_back();
  EXPECT_THROW(trace_link(fc, fixtures::fast_trace()), AlgebraError);
}

TEST(Basket, BlowupAddsOrbinatePoints) {
  LinkStep blow;
  blow.kind = StepKind::KawamataBlowup;
  Basket b;
  b.points.push_back({parse_quotient_point("1/5(1,2,3)"), "s"});
  auto out = track_basket({blow}, b, parse_quotient_point("1/5(1,2,3)"), {1, 2, 3});
  EXPECT_EQ(out.back().to_string(), "{1/2(1,1,1), 1/3(1,1,2)}");
}

TEST(Template, TracesConform) {
  for (auto fc : {fixtures::fano_10985(), fixtures::fano_20652(), fixtures::fano_24097()}) {
    auto tr = trace_link(fc, fixtures::fast_trace());
    EXPECT_TRUE(tr.template_ok) << fc.id;
  }
}

TEST(Template, MutationsAreCaught) {
  auto tr = trace_link(fixtures::fano_10985(), fixtures::fast_trace());
  std::vector<std::string> notes;
  auto steps = tr.steps;
  steps[3].predicted_skip = false;
  EXPECT_FALSE(check_link_template(tr.tag, tr.config, tr.input.d, steps, &notes));
  steps = tr.steps;
  steps.pop_back();
  EXPECT_FALSE(check_link_template(tr.tag, tr.config, tr.input.d, steps, &notes));
  steps = tr.steps;
  steps.back().contraction_type = "(2,1)";
  EXPECT_FALSE(check_link_template(tr.tag, tr.config, tr.input.d, steps, &notes));
  steps = tr.steps;
  steps[2].kind = StepKind::Isomorphism;
  EXPECT_FALSE(check_link_template(tr.tag, tr.config, tr.input.d, steps, &notes));
  steps = tr.steps;
  std::swap(steps[0], steps[1]);
  EXPECT_FALSE(check_link_template(tr.tag, tr.config, tr.input.d, steps, &notes));
}

TEST(Trace, RelabelsTomIndex) {
  auto fc = fixtures::fano_24097();
  const std::array<int, 6> swap12{0, 2, 1, 3, 4, 5};
  fc.M = fc.M.permuted(swap12);
  fc.fmt.k = 2;
  auto tr = trace_link(fc, fixtures::fast_trace());
  EXPECT_EQ(tr.relabel, swap12);
  EXPECT_EQ(tr.steps.back().summary(), "ConicBundle{6}");
}

TEST(Trace, StructuralShape) {
  auto tr = structural_trace(fixtures::fano_10985());
  EXPECT_EQ(tr.structure, (std::vector<std::string>{"KawamataBlowup", "Flop", "Flip", "Isomorphism",
                                                    "DivisorialContractionToFano"}));
  ASSERT_TRUE(tr.steps.back().endpoint.has_value());
  EXPECT_EQ(tr.steps.back().endpoint->codimension, 3);
  EXPECT_EQ(tr.steps.back().endpoint->det, -1);
}

TEST(Picard, ChainNeedsFlagAndContraction) {
  auto fc = fixtures::fano_10985();
  auto tr = trace_link(fc, fixtures::fast_trace());
  auto yes = picard_report(fc, tr, true);
  EXPECT_TRUE(yes.determined);
  EXPECT_EQ(yes.rho, 1);
  EXPECT_FALSE(picard_report(fc, tr, false).determined);
  auto fib = trace_link(fixtures::fano_20652(), fixtures::fast_trace());
  EXPECT_FALSE(picard_report(fixtures::fano_20652(), fib, true).determined);
}

TEST(Elimination, LoneLinearTerms) {
  auto R = Ring::make({"a", "b", "c"}, {{1, 1, 1}});
  std::vector<Polynomial> gens{parse_polynomial("a - b^2", R), parse_polynomial("a*c + b", R),
                               parse_polynomial("c^3 + a*b", R)};
  auto e = eliminate_lone_linear(gens, {"a", "b", "c"});
  EXPECT_EQ(e.eliminated, (std::vector<std::string>{"a"}));
  ASSERT_EQ(e.remaining.size(), 2u);
  EXPECT_TRUE(same_up_to_sign(e.remaining[0], parse_polynomial("b^2*c + b", R)));
}
