#include <algorithm>

#include "tomlink/birational.hpp"

namespace tomlink {

namespace {

std::string yname(int j) { return "y" + std::to_string(j + 1); }

bool unit_orbinates(const FanoCase& fc) { return fc.a == 1 && fc.b == 1 && fc.c == 1; }

bool predicts_skip(const WeightConfig& cfg, const std::vector<int>& group, const std::array<long, 4>& d) {
  if (group.size() != 1) return false;
  long dw = d[static_cast<std::size_t>(group.front())];
  return std::find(cfg.b_pis.begin(), cfg.b_pis.end(), dw) != cfg.b_pis.end();
}

std::array<int, 6> swap_to_one(int k) {
  std::array<int, 6> p{0, 1, 2, 3, 4, 5};
  std::swap(p[1], p[static_cast<std::size_t>(k)]);
  return p;
}

}  // namespace

LinkTrace trace_link(const FanoCase& fc, const TraceOptions& opts) {
  validate_case(fc);
  LinkTrace tr;
  tr.input = fc;
  SkewMatrix5 M = fc.M;
  TomFormat fmt = fc.fmt;
  if (fmt.k != 1) {
    tr.relabel = swap_to_one(fmt.k);
    M = M.permuted(tr.relabel);
    fmt.k = 1;
    if (!check_tom(M, fmt)) throw AlgebraError("relabeled matrix is not in Tom_1 format");
  }
  tr.tag = classify_case(fc.d);
  tr.config = detect_weight_config(M.weights(), fc.d);

  tr.unprojection = build_unprojection(M, fmt, fc.r);
  if (opts.verify_unprojection) {
    VerifyOptions vo;
    vo.groebner = opts.groebner;
    tr.unprojection_report = verify_unprojection(tr.unprojection, vo);
  }
  tr.scroll = kawamata_scroll(fc);
  tr.deltas = compute_deltas(tr.unprojection.g, fc);
  for (std::size_t j = 0; j < 4; ++j)
    if (tr.deltas[j] != fc.r + fc.d[j])
      throw AlgebraError("delta_" + std::to_string(j + 1) + " = " + std::to_string(tr.deltas[j]) + " differs from r + d_" +
                         std::to_string(j + 1));
  tr.Y = blowup_ideal(tr.unprojection, tr.scroll, tr.deltas);

  LinkStep blow;
  blow.kind = StepKind::KawamataBlowup;
  tr.steps.push_back(blow);

  LinkStep flop;
  flop.kind = StepKind::Flop;
  if (unit_orbinates(fc)) {
    FlopOptions fo;
    fo.groebner = opts.groebner;
    fo.seed = opts.seed;
    tr.flops = count_flops(M, fmt, fo);
    flop.flop_count = tr.flops.count;
    if (fc.declared_nodes && *fc.declared_nodes != flop.flop_count) {
      tr.template_ok = false;
      tr.template_notes.push_back("computed " + std::to_string(flop.flop_count) + " nodes, declared " +
                                  std::to_string(*fc.declared_nodes));
    }
  } else if (fc.declared_nodes) {
    flop.flop_count = *fc.declared_nodes;
    tr.template_notes.push_back("flop count announced from the declared nodes");
  } else {
    flop.flop_count = -1;
    tr.template_notes.push_back("node count on P(a,b,c) not computed and not declared");
  }
  tr.steps.push_back(flop);

  auto groups = ideal_weight_groups(fc.d);
  const std::size_t m = groups.size();
  const bool fibration = groups.back().size() >= 2;
  const std::size_t walls = fibration ? m - 1 : m - 2;
  for (std::size_t w = 0; w < walls; ++w) {
    std::vector<std::string> names;
    for (int j : groups[w]) names.push_back(yname(j));
    LinkStep st = analyze_wall(tr.Y, tr.scroll, names);
    st.predicted_skip = predicts_skip(tr.config, groups[w], fc.d);
    tr.steps.push_back(st);
  }

  LinkStep last;
  if (!fibration) {
    last.kind = StepKind::DivisorialContraction;
    const auto& gm = groups[m - 1];
    const auto& prev = groups[m - 2];
    last.wall = yname(gm.front());
    last.contraction_type = prev.size() >= 2 ? "(2,1)" : "(2,0)";
    last.endpoint = endpoint_fano(tr.Y, tr.scroll, yname(gm.front()), yname(prev.front()), opts.groebner);
  } else {
    std::vector<std::string> base;
    for (int j : groups.back()) base.push_back(yname(j));
    last.wall = base.front();
    for (std::size_t i = 1; i < base.size(); ++i) last.wall += "," + base[i];
    if (base.size() == 2) {
      last.kind = StepKind::DelPezzoFibration;
      last.dp_degree = dp_degree(tr.Y, tr.scroll, {base[0], base[1]}, opts.seed, opts.groebner);
    } else {
      last.kind = StepKind::ConicBundle;
      try {
        last.conic = conic_discriminant(tr.Y, tr.scroll, base, opts.groebner);
      } catch (const BudgetExceeded&) {
        throw;
      } catch (const AlgebraError& e) {
        ConicData cd;
        cd.base = base;
        cd.structural_only = true;
        cd.note = std::string("discriminant undetermined: ") + e.what();
        last.conic = cd;
        tr.template_notes.push_back(cd.note);
      }
    }
  }
  tr.steps.push_back(last);

  if (opts.check_template)
    tr.template_ok = check_link_template(tr.tag, tr.config, fc.d, tr.steps, &tr.template_notes) && tr.template_ok;
  if (opts.track_basket) tr.baskets = track_basket(tr.steps, fc.basket, fc.centre(), {fc.a, fc.b, fc.c});
  else tr.baskets = {fc.basket};
  return tr;
}

LinkTrace structural_trace(const FanoCase& fc) {
  LinkTrace tr;
  tr.input = fc;
  tr.structural = true;
  tr.tag = classify_case(fc.d);
  if (fc.M.ring()) {
    WeightMatrix5 w = fc.M.weights();
    if (fc.fmt.k != 1) {
      tr.relabel = swap_to_one(fc.fmt.k);
      w = fc.M.permuted(tr.relabel).weights();
    }
    tr.config = detect_weight_config(w, fc.d);
  }
  tr.scroll = kawamata_scroll(fc);
  LinkStep blow;
  blow.kind = StepKind::KawamataBlowup;
  tr.steps.push_back(blow);
  LinkStep flop;
  flop.kind = StepKind::Flop;
  flop.flop_count = fc.declared_nodes.value_or(-1);
  tr.steps.push_back(flop);
  auto groups = ideal_weight_groups(fc.d);
  const std::size_t m = groups.size();
  const bool fibration = groups.back().size() >= 2;
  const std::size_t walls = fibration ? m - 1 : m - 2;
  for (std::size_t w = 0; w < walls; ++w) {
    LinkStep st;
    st.wall = yname(groups[w].front());
    for (std::size_t i = 1; i < groups[w].size(); ++i) st.wall += "," + yname(groups[w][i]);
    st.predicted_skip = predicts_skip(tr.config, groups[w], fc.d);
    st.kind = groups[w].size() == 2 ? StepKind::SimultaneousFlips
                                    : (st.predicted_skip ? StepKind::Isomorphism : StepKind::Flip);
    tr.steps.push_back(st);
  }
  LinkStep last;
  if (!fibration) {
    const auto& gm = groups[m - 1];
    const auto& prev = groups[m - 2];
    last.kind = StepKind::DivisorialContraction;
    last.wall = yname(gm.front());
    last.contraction_type = prev.size() >= 2 ? "(2,1)" : "(2,0)";
    EndpointFano ep;
    ep.contracted = last.wall;
    const Ring& F = *tr.scroll.ring;
    const int cv = F.require_index(last.wall), pv = F.require_index(yname(prev.front()));
    ep.det = F.weight(0, pv) * F.weight(1, cv) - F.weight(0, cv) * F.weight(1, pv);
    ep.gorenstein = ep.det == -1;
    // s is always eliminated by s*y - g at the contracted coordinate.
    ep.eliminated = {"s"};
    for (int v = 0; v < F.nvars(); ++v) {
      if (v == cv || F.name(v) == "s") continue;
      ep.weights.push_back(F.weight(0, v) + F.weight(0, cv) * F.weight(1, v));
    }
    ep.codimension = static_cast<int>(ep.weights.size()) - 1 - 3;
    last.endpoint = ep;
  } else {
    last.wall = yname(groups.back().front());
    last.kind = groups.back().size() == 2 ? StepKind::DelPezzoFibration : StepKind::ConicBundle;
  }
  tr.steps.push_back(last);
  for (const auto& st : tr.steps) tr.structure.push_back(step_kind_name(st.kind));
  tr.baskets = {fc.basket};
  return tr;
}

std::string PicardReport::to_string() const {
  std::string s = determined ? "rho = " + std::to_string(rho) : std::string("undetermined by this method");
  for (const auto& c : chain) s += "\n  " + c;
  return s;
}

PicardReport picard_report(const FanoCase& fc, const LinkTrace& trace, bool endpoint_quasismooth) {
  PicardReport rep;
  if (trace.steps.empty() || trace.steps.back().kind != StepKind::DivisorialContraction || !trace.steps.back().endpoint) {
    rep.chain.push_back("the link does not end with a divisorial contraction to a Fano 3-fold");
    return rep;
  }
  const EndpointFano& ep = *trace.steps.back().endpoint;
  rep.chain.push_back("X is of Tom_1 type with centre " + fc.centre().to_string() + ", case " + tag_name(trace.tag));
  std::string shape;
  for (const auto& st : trace.steps) shape += (shape.empty() ? "" : ", ") + st.summary();
  rep.chain.push_back("link: " + shape);
  rep.chain.push_back("X' has codimension " + std::to_string(ep.codimension) + " (X has codimension 4)");
  if (ep.codimension > 3) {
    rep.chain.push_back("codimension did not drop to 3 or less");
    return rep;
  }
  if (!endpoint_quasismooth) {
    rep.chain.push_back("quasi-smoothness of X' not asserted");
    return rep;
  }
  rep.chain.push_back("X' quasi-smooth (asserted), so rho(X') = 1 in codimension <= 3");
  rep.chain.push_back("the link extracts and contracts one divisor, so rho(X) = rho(X') = 1");
  rep.determined = true;
  rep.rho = 1;
  return rep;
}

}  // namespace tomlink
