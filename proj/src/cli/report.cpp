#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tomlink/cli.hpp"

namespace tomlink::cli {

namespace {

namespace fs = std::filesystem;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Json strings(const std::vector<Polynomial>& ps) {
  Json a = Json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

Json ring_json(const Ring& R) {
  Json j;
  j["variables"] = R.names();
  j["weights"] = R.weights();
  return j;
}

Json header(const CaseFile& cf, const RunOptions& opts, const std::string& command) {
  Json j;
  j["tool"] = {{"name", "tomlink"}, {"version", TOMLINK_VERSION}};
  j["command"] = command;
  j["seed"] = opts.seed;
  j["budget"] = opts.budget;
  j["saturation_oracle"] = !opts.skip_saturation_oracle;

  Json in;
  in["id"] = cf.id;
  in["source"] = cf.source;
  in["ambient"] = cf.ambient;
  in["centre"] = cf.fano.centre().normalized().to_string();
  in["tom_index"] = cf.tom_index;
  in["basket"] = cf.fano.basket.to_string();
  in["basket_complete"] = cf.basket_complete;
  in["analysis"] = cf.structural ? "structural" : "full";
  if (cf.fano.declared_nodes) in["declared_nodes"] = *cf.fano.declared_nodes;
  Json m;
  m["weights"] = cf.matrix_weights.m;
  if (cf.general_seed) m["general_seed"] = *cf.general_seed;
  Json entries = Json::array();
  for (const auto& e : cf.fano.M.upper()) entries.push_back(e.to_string());
  m["entries"] = entries;
  in["matrix"] = m;
  j["input"] = in;
  return j;
}

GroebnerOptions groebner(const RunOptions& opts) {
  GroebnerOptions g;
  g.budget = opts.budget;
  return g;
}

Json unprojection_json(const UnprojectionResult& res, const UnprojectionReport& rep, const FanoCase& fc) {
  Json j;
  j["equations"] = strings(res.X_ideal.generators());
  j["equation_count"] = res.X_ideal.generators().size();
  Json g = Json::array(), deg = Json::array(), expect = Json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    g.push_back(res.g[i].to_string());
    deg.push_back(res.g[i].is_zero() ? Json(nullptr) : Json(bidegree_of(res.g[i]).top));
    expect.push_back(fc.r + fc.d[i]);
  }
  j["g"] = g;
  j["g_degrees"] = deg;
  j["g_expected_degrees"] = expect;
  j["divisor_indices"] = res.divisor_indices;
  j["ring"] = ring_json(*res.x_ring);
  Json v;
  v["degrees"] = rep.degrees_ok;
  v["proportionality"] = rep.proportional_ok;
  v["consistency"] = rep.consistency_ok;
  v["elimination"] = rep.elimination_checked ? Json(rep.elimination_ok) : Json("not checked");
  v["failures"] = rep.failures;
  v["ok"] = rep.ok();
  j["verification"] = v;
  return j;
}

Json scroll_json(const Scroll& sc) { return ring_json(*sc.ring); }

Json oracle_json(const OracleResult& o) {
  return {{"ran", true}, {"equal", o.equal}, {"saturation_size", o.saturation_size}, {"detail", o.detail}};
}

Json flip_json(const FlipData& f) {
  Json j;
  j["base_point"] = f.base_point;
  j["weights"] = f.weights_string();
  j["eliminated"] = f.eliminated;
  Json sv = Json::array();
  for (const auto& [n, w] : f.survivors) sv.push_back({n, w});
  j["survivors"] = sv;
  j["contracted"] = f.contracted;
  j["extracted"] = f.extracted;
  if (f.hypersurface_degree) j["hypersurface_degree"] = *f.hypersurface_degree;
  Json pairs = Json::array();
  for (const auto& [u, v] : f.hypersurface_pairs) pairs.push_back(u + "*" + v);
  j["hypersurface_pairs"] = pairs;
  j["mirrored"] = f.mirrored;
  return j;
}

Json endpoint_json(const EndpointFano& e) {
  Json j;
  j["ambient"] = e.ambient_string();
  j["weights"] = e.weights;
  j["equations"] = strings(e.equations);
  j["eliminated"] = e.eliminated;
  j["contracted"] = e.contracted;
  j["codimension"] = e.codimension;
  j["gorenstein"] = e.gorenstein;
  j["minimal_certified"] = e.minimal_certified;
  j["det"] = e.det;
  if (e.ring) j["variables"] = e.ring->names();
  Json hints = Json::array();
  if (e.codimension == 1) hints.push_back("hypersurface");
  if (e.codimension == 2 && e.equations.size() == 2) hints.push_back("complete intersection");
  if (e.codimension == 3) hints.push_back("pfaffian format");
  if (e.gorenstein) hints.push_back("Gorenstein index 1");
  j["identification_hints"] = hints;
  return j;
}

Json conic_json(const ConicData& c) {
  Json j;
  j["structural_only"] = c.structural_only;
  j["base"] = c.base;
  if (!c.note.empty()) j["note"] = c.note;
  if (c.structural_only) return j;
  j["delta"] = c.delta;
  j["delta_cross_check"] = c.delta_cross_check;
  j["line"] = c.line_var;
  j["patches"] = c.patch_vars;
  j["shared_roots"] = c.shared_roots;
  Json patches = Json::array();
  for (std::size_t i = 0; i < 2; ++i)
    patches.push_back({{"patch", c.patch_vars[i]},
                       {"conic", c.conics[i].to_string()},
                       {"determinant", c.determinants[i].to_string()},
                       {"fibre", c.fibre_vars[i]},
                       {"eliminated", c.eliminated[i]}});
  j["patch_data"] = patches;
  return j;
}

Json step_json(const LinkStep& st) {
  Json j;
  j["kind"] = step_kind_name(st.kind);
  j["summary"] = st.summary();
  if (!st.wall.empty()) j["wall"] = st.wall;
  if (st.kind == StepKind::Flop) j["flop_count"] = st.flop_count < 0 ? Json("unknown") : Json(st.flop_count);
  if (st.predicted_skip) j["predicted_skip"] = true;
  if (!st.flips.empty()) {
    Json f = Json::array();
    for (const auto& fl : st.flips) f.push_back(flip_json(fl));
    j["flips"] = f;
  }
  if (!st.contraction_type.empty()) j["contraction_type"] = st.contraction_type;
  if (st.endpoint) j["endpoint"] = endpoint_json(*st.endpoint);
  if (st.kind == StepKind::DelPezzoFibration) j["dp_degree"] = st.dp_degree;
  if (st.conic) j["conic"] = conic_json(*st.conic);
  return j;
}

std::string chain_string(const std::vector<LinkStep>& steps) {
  std::string s;
  for (const auto& st : steps) s += (s.empty() ? "" : " -> ") + st.summary();
  return s;
}

}  // namespace

Json unproject_report(const CaseFile& cf, const RunOptions& opts) {
  auto t0 = Clock::now();
  Json j = header(cf, opts, "unproject");
  auto res = build_unprojection(cf.fano.M, cf.fano.fmt, cf.fano.r);
  VerifyOptions vo;
  vo.groebner = groebner(opts);
  vo.check_elimination = !opts.skip_saturation_oracle;
  auto rep = verify_unprojection(res, vo);
  j["unprojection"] = unprojection_json(res, rep, cf.fano);
  j["ok"] = rep.ok();
  if (opts.timings) j["timings"] = {{"total_seconds", seconds_since(t0)}};
  return j;
}

Json blowup_report(const CaseFile& cf, const RunOptions& opts) {
  auto t0 = Clock::now();
  Json j = header(cf, opts, "blowup");
  FanoCase fc = cf.fano;
  if (fc.fmt.k != 1) {
    std::array<int, 6> perm{0, 1, 2, 3, 4, 5};
    std::swap(perm[1], perm[static_cast<std::size_t>(fc.fmt.k)]);
    fc.M = fc.M.permuted(perm);
    fc.fmt.k = 1;
    j["relabel"] = perm;
  }
  auto res = build_unprojection(fc.M, fc.fmt, fc.r);
  auto scroll = kawamata_scroll(fc);
  auto deltas = compute_deltas(res.g, fc);
  Ideal Y = blowup_ideal(res, scroll, deltas);
  j["scroll"] = scroll_json(scroll);
  j["deltas"] = deltas;
  Json expect = Json::array();
  for (long d : fc.d) expect.push_back(fc.r + d);
  j["deltas_expected"] = expect;
  j["h"] = strings(Y.generators());
  bool ok = true;
  for (std::size_t i = 0; i < 4; ++i) ok = ok && deltas[i] == fc.r + fc.d[i];
  if (opts.skip_saturation_oracle) {
    j["oracle"] = {{"ran", false}};
  } else {
    auto o = saturation_oracle(res, scroll, Y, groebner(opts));
    j["oracle"] = oracle_json(o);
    ok = ok && o.equal;
  }
  j["ok"] = ok;
  if (opts.timings) j["timings"] = {{"total_seconds", seconds_since(t0)}};
  return j;
}

Json trace_report(const CaseFile& cf, const RunOptions& opts) {
  auto t0 = Clock::now();
  Json j = header(cf, opts, "trace");
  const FanoCase& fc = cf.fano;
  const bool structural = cf.structural || opts.structural;
  LinkTrace tr;
  bool ok = true;
  if (structural) {
    tr = structural_trace(fc);
  } else {
    TraceOptions to;
    to.seed = opts.seed;
    to.groebner = groebner(opts);
    to.track_basket = cf.basket_complete;
    tr = trace_link(fc, to);
    j["unprojection"] = unprojection_json(tr.unprojection, tr.unprojection_report, fc);
    j["scroll"] = scroll_json(tr.scroll);
    j["deltas"] = tr.deltas;
    j["h"] = strings(tr.Y.generators());
    ok = ok && tr.unprojection_report.ok();
    if (opts.skip_saturation_oracle) {
      j["oracle"] = {{"ran", false}};
    } else {
      auto o = saturation_oracle(tr.unprojection, tr.scroll, tr.Y, groebner(opts));
      j["oracle"] = oracle_json(o);
      ok = ok && o.equal;
    }
    if (tr.flops.d_ring) {
      Json f;
      f["count"] = tr.flops.count;
      f["det_vanishes"] = tr.flops.det_vanishes;
      f["rank_at_least_two"] = tr.flops.rank_at_least_two;
      f["nodes_on_x1"] = tr.flops.nodes_on_x1;
      f["samples"] = tr.flops.samples;
      f["samples_rank_three"] = tr.flops.samples_rank_three;
      f["sample_ranks"] = tr.flops.sample_ranks;
      j["flops"] = f;
    }
  }
  j["analysis"] = structural ? "structural" : "full";
  j["tag"] = tag_name(tr.tag);
  j["config"] = {{"name", tr.config.name()}, {"pi", tr.config.pi}, {"matches", tr.config.matches}, {"b_pis", tr.config.b_pis}};
  j["relabel"] = tr.relabel;
  Json steps = Json::array();
  for (const auto& st : tr.steps) steps.push_back(step_json(st));
  j["steps"] = steps;
  j["chain"] = chain_string(tr.steps);
  Json baskets = Json::array();
  for (const auto& b : tr.baskets) baskets.push_back(b.to_string());
  j["baskets"] = baskets;
  j["basket_tracked"] = !structural && cf.basket_complete;
  j["template"] = {{"ok", tr.template_ok}, {"notes", tr.template_notes}};
  ok = ok && tr.template_ok;
  auto pic = picard_report(fc, tr, opts.endpoint_quasismooth);
  j["picard"] = {{"determined", pic.determined},
                 {"rho", pic.determined ? Json(pic.rho) : Json(nullptr)},
                 {"chain", pic.chain},
                 {"endpoint_quasismooth_asserted", opts.endpoint_quasismooth}};
  j["ok"] = ok;
  if (opts.timings) j["timings"] = {{"total_seconds", seconds_since(t0)}};
  return j;
}

std::string render_report(const Json& report, bool single_line) {
  return (single_line ? report.dump() : report.dump(2)) + "\n";
}

std::string default_data_dir() {
  if (const char* env = std::getenv("TOMLINK_DATA_DIR")) return env;
  return TOMLINK_DATA_DIR;
}

std::vector<std::string> bundled_cases(const std::string& data_dir) {
  std::vector<std::string> out;
  fs::path dir = fs::path(data_dir) / "cases";
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".case") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::string> split_lines(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), '\r'), s.end());
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::vector<std::string> lines;
  std::istringstream in(s);
  std::string l;
  while (std::getline(in, l)) lines.push_back(l);
  return lines;
}

}  // namespace

std::string golden_diff(const std::string& expected, const std::string& actual) {
  auto a = split_lines(expected), b = split_lines(actual);
  if (a == b) return "";
  // LCS table; reports are a few hundred lines.
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> L(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t k = m; k-- > 0;) L[i][k] = a[i] == b[k] ? L[i + 1][k + 1] + 1 : std::max(L[i + 1][k], L[i][k + 1]);
  std::ostringstream out;
  int shown = 0;
  const int limit = 60;
  std::size_t i = 0, k = 0;
  while ((i < n || k < m) && shown < limit) {
    if (i < n && k < m && a[i] == b[k]) {
      ++i;
      ++k;
    } else if (k < m && (i == n || L[i][k + 1] >= L[i + 1][k])) {
      out << "+" << (k + 1) << ": " << b[k] << "\n";
      ++k;
      ++shown;
    } else {
      out << "-" << (i + 1) << ": " << a[i] << "\n";
      ++i;
      ++shown;
    }
  }
  if (shown == limit) out << "(diff truncated)\n";
  return out.str();
}

std::string golden_report(const std::string& case_path, const std::string& command) {
  CaseFile cf = parse_case(case_path);
  RunOptions o;
  o.skip_saturation_oracle = true;
  Json j;
  if (command == "unproject") j = unproject_report(cf, o);
  else if (command == "blowup") j = blowup_report(cf, o);
  else if (command == "trace") j = trace_report(cf, o);
  else throw std::invalid_argument("unknown report command " + command);
  return render_report(j, false);
}

std::vector<GoldenResult> check_goldens(const std::string& data_dir) {
  std::vector<GoldenResult> out;
  fs::path dir = fs::path(data_dir) / "golden";
  if (!fs::is_directory(dir)) return out;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.path().extension() == ".txt") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    GoldenResult g;
    g.name = f.filename().string();
    std::string stem = f.stem().string();  // <case>.<command>
    auto dot = stem.rfind('.');
    try {
      if (dot == std::string::npos) throw std::invalid_argument("golden name must be <case>.<command>.txt");
      std::ifstream in(f);
      std::stringstream ss;
      ss << in.rdbuf();
      auto actual = golden_report((fs::path(data_dir) / "cases" / (stem.substr(0, dot) + ".case")).string(), stem.substr(dot + 1));
      g.diff = golden_diff(ss.str(), actual);
      g.pass = g.diff.empty();
    } catch (const std::exception& e) {
      g.diff = e.what();
    }
    out.push_back(g);
  }
  return out;
}

}  // namespace tomlink::cli
