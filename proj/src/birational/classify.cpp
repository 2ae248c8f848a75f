#include <algorithm>

#include "tomlink/birational.hpp"

namespace tomlink {

std::string tag_name(CaseTag tag) {
  static const std::array<const char*, 8> names{"(i)", "(ii)", "(iii)", "(iv)", "(v)", "(vi)", "(vii)", "(viii)"};
  return names[static_cast<std::size_t>(tag)];
}

CaseTag classify_case(const std::array<long, 4>& d) {
  for (std::size_t j = 0; j + 1 < 4; ++j)
    if (d[j] < d[j + 1]) throw AlgebraError("ideal weights not sorted");
  if (d[3] < 1) throw AlgebraError("ideal weights must be positive");
  const bool e12 = d[0] == d[1], e23 = d[1] == d[2], e34 = d[2] == d[3];
  if (!e12 && !e23 && !e34) return CaseTag::I;
  if (!e12 && e23 && !e34) return CaseTag::II;
  if (e12 && !e23 && !e34) return CaseTag::III;
  if (!e12 && !e23 && e34) return CaseTag::IV;
  if (e12 && !e23 && e34) return CaseTag::V;
  if (!e12 && e23 && e34) return CaseTag::VI;
  if (e12 && e23 && !e34) return CaseTag::VII;
  return CaseTag::VIII;
}

std::string WeightConfig::name() const {
  switch (kind) {
    case Kind::A:
      return "(a)";
    case Kind::B:
      return "(b)";
    default:
      return "neither";
  }
}

WeightConfig detect_weight_config(const WeightMatrix5& w, const std::array<long, 4>& d) {
  WeightConfig cfg;
  const long m24 = w.at(2, 4), m25 = w.at(2, 5), m34 = w.at(3, 4), m35 = w.at(3, 5);
  bool a = m24 == m25 && m25 == m34 && m34 == m35;
  if (a) cfg.matches.push_back("(a) pi=" + std::to_string(m24));
  const std::array<std::array<int, 4>, 3> pairs{{{2, 3, 4, 5}, {2, 4, 3, 5}, {2, 5, 3, 4}}};
  for (const auto& p : pairs) {
    long u = w.at(p[0], p[1]), v = w.at(p[2], p[3]);
    if (u != v || (u != d[0] && u != d[1])) continue;
    cfg.matches.push_back("(b) a" + std::to_string(p[0]) + std::to_string(p[1]) + ",a" + std::to_string(p[2]) +
                          std::to_string(p[3]) + " pi=" + std::to_string(u));
    cfg.b_pis.push_back(u);
  }
  if (a) {
    cfg.kind = WeightConfig::Kind::A;
    cfg.pi = m24;
  } else if (!cfg.b_pis.empty()) {
    cfg.kind = WeightConfig::Kind::B;
    cfg.pi = cfg.b_pis.front();
  }
  return cfg;
}

std::vector<std::vector<int>> ideal_weight_groups(const std::array<long, 4>& d) {
  std::vector<std::vector<int>> groups;
  for (int j = 0; j < 4; ++j) {
    if (groups.empty() || d[static_cast<std::size_t>(groups.back().front())] != d[static_cast<std::size_t>(j)])
      groups.push_back({});
    groups.back().push_back(j);
  }
  return groups;
}

std::string step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::KawamataBlowup:
      return "KawamataBlowup";
    case StepKind::Flop:
      return "Flop";
    case StepKind::Isomorphism:
      return "Isomorphism";
    case StepKind::Flip:
      return "Flip";
    case StepKind::SimultaneousFlips:
      return "SimultaneousFlips";
    case StepKind::DivisorialContraction:
      return "DivisorialContractionToFano";
    case StepKind::DelPezzoFibration:
      return "DelPezzoFibration";
    case StepKind::ConicBundle:
      return "ConicBundle";
  }
  return "?";
}

std::string FlipData::weights_string() const {
  std::string s = "(";
  bool first = true;
  for (long w : contracted) {
    s += (first ? "" : ",") + std::to_string(w);
    first = false;
  }
  for (long w : extracted) {
    s += (first ? "" : ",") + std::to_string(w);
    first = false;
  }
  if (hypersurface_degree) s += ";" + std::to_string(*hypersurface_degree);
  return s + ")";
}

std::string EndpointFano::ambient_string() const {
  std::string s = "P^" + std::to_string(static_cast<long>(weights.size()) - 1) + "(";
  std::vector<long> w = weights;
  std::sort(w.begin(), w.end());
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

std::string LinkStep::summary() const {
  std::string n = step_kind_name(kind);
  switch (kind) {
    case StepKind::KawamataBlowup:
      return n;
    case StepKind::Flop:
      return n + "{" + (flop_count < 0 ? std::string("?") : std::to_string(flop_count)) + "}";
    case StepKind::Isomorphism:
      return n + "{" + wall + "}";
    case StepKind::Flip:
    case StepKind::SimultaneousFlips: {
      std::string s = n + "{";
      for (std::size_t i = 0; i < flips.size(); ++i) s += (i ? "," : "") + flips[i].weights_string();
      return s + "}";
    }
    case StepKind::DivisorialContraction:
      return n + "{" + contraction_type + "}";
    case StepKind::DelPezzoFibration:
      return n + "{" + std::to_string(dp_degree) + "}";
    case StepKind::ConicBundle:
      if (conic && !conic->structural_only) return n + "{" + std::to_string(conic->delta) + "}";
      if (conic && conic->base.size() == 3) return n + "{undetermined}";
      return n + "{quadric base}";
  }
  return n;
}

bool check_link_template(CaseTag tag, const WeightConfig& config, const std::array<long, 4>& d,
                         const std::vector<LinkStep>& steps, std::vector<std::string>* notes) {
  std::vector<std::string> local;
  std::vector<std::string>& out = notes ? *notes : local;
  bool ok = true;
  auto fail = [&](const std::string& msg) {
    ok = false;
    out.push_back(msg);
  };
  auto groups = ideal_weight_groups(d);
  const std::size_t m = groups.size();
  const bool fibration = groups.back().size() >= 2;
  const std::size_t walls = fibration ? m - 1 : m - 2;
  if (steps.size() != walls + 3) {
    fail("expected " + std::to_string(walls + 3) + " steps for case " + tag_name(tag) + ", found " +
         std::to_string(steps.size()));
    return false;
  }
  if (steps[0].kind != StepKind::KawamataBlowup) fail("the link does not open with the Kawamata blow-up");
  if (steps[1].kind != StepKind::Flop) fail("the second step is not a flop");
  int isos = 0;
  for (std::size_t w = 0; w < walls; ++w) {
    const LinkStep& st = steps[2 + w];
    const auto& g = groups[w];
    if (g.size() == 1) {
      if (st.kind == StepKind::Isomorphism) {
        ++isos;
        if (!st.predicted_skip) fail("wall " + st.wall + " is an isomorphism not explained by configuration (b)");
        else out.push_back("wall " + st.wall + ": skipped flip, configuration " + config.name() + " with pi = d_" +
                            std::to_string(g.front() + 1));
      } else if (st.kind == StepKind::Flip) {
        if (st.predicted_skip) fail("configuration (b) forces a pure power on wall " + st.wall + " but a flip was found");
      } else {
        fail("wall " + st.wall + " gave " + step_kind_name(st.kind));
      }
    } else if (g.size() == 2) {
      if (st.kind != StepKind::SimultaneousFlips) fail("wall " + st.wall + " gave " + step_kind_name(st.kind) + ", expected simultaneous flips");
    } else {
      fail("wall group of size " + std::to_string(g.size()) + " before the last step");
    }
  }
  if (isos > 1) fail("more than one flip is skipped");
  const LinkStep& last = steps.back();
  switch (tag) {
    case CaseTag::I:
    case CaseTag::III:
      if (last.kind != StepKind::DivisorialContraction || last.contraction_type != "(2,0)")
        fail("case " + tag_name(tag) + " must end with a (2,0) divisorial contraction");
      break;
    case CaseTag::II:
    case CaseTag::VII:
      if (last.kind != StepKind::DivisorialContraction || last.contraction_type != "(2,1)")
        fail("case " + tag_name(tag) + " must end with a (2,1) divisorial contraction");
      break;
    case CaseTag::IV:
    case CaseTag::V:
      if (last.kind != StepKind::DelPezzoFibration) fail("case " + tag_name(tag) + " must end with a del Pezzo fibration");
      break;
    case CaseTag::VI:
    case CaseTag::VIII:
      if (last.kind != StepKind::ConicBundle) fail("case " + tag_name(tag) + " must end with a conic bundle");
      break;
  }
  return ok;
}

}  // namespace tomlink
