#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "tomlink/cli.hpp"

namespace tomlink::cli {

namespace {

struct Flags {
  RunOptions run;
  std::string case_path;
  std::string data_dir = default_data_dir();
  bool json = false;
};

void add_common(CLI::App* sub, Flags& f, bool needs_case) {
  sub->add_option("--seed", f.run.seed, "seed for rank samples and fibre degree sampling");
  sub->add_option("--budget", f.run.budget, "cap on S-polynomial reductions per Groebner computation");
  sub->add_flag("--skip-saturation-oracle", f.run.skip_saturation_oracle, "fast mode: skip the saturation oracle");
  sub->add_option("--data-dir", f.data_dir, "directory holding cases/ and golden/");
  if (needs_case) {
    sub->add_option("--case", f.case_path, "case file")->required();
    sub->add_flag("--json", f.json, "single-line report");
    sub->add_flag("--timings", f.run.timings, "include wall-clock timings (breaks byte-identity)");
  }
}

int selftest(const Flags& f, std::ostream& out) {
  AcceptanceOptions ao;
  ao.data_dir = f.data_dir;
  ao.budget = f.run.budget;
  ao.skip_saturation_oracle = f.run.skip_saturation_oracle;
  bool all = true, budget = false;
  for (const auto& r : run_acceptance(ao)) {
    out << format_criterion(r) << std::flush;
    all = all && (r.pass || r.skipped);
    budget = budget || r.budget_exceeded;
  }
  auto goldens = check_goldens(f.data_dir);
  for (const auto& g : goldens) {
    out << (g.pass ? "PASS" : "FAIL") << " golden " << g.name << "\n";
    if (!g.pass) out << g.diff;
    all = all && g.pass;
  }
  if (goldens.empty()) {
    out << "FAIL golden: no golden files under " << f.data_dir << "/golden\n";
    all = false;
  }
  if (budget) return kBudgetExceeded;
  return all ? kOk : kVerificationFailure;
}

int examples(const Flags& f, std::ostream& out, std::ostream& err) {
  int status = kOk;
  for (const auto& path : bundled_cases(f.data_dir)) {
    try {
      CaseFile cf = parse_case(path);
      out << std::left << std::setw(16) << cf.id << std::setw(22)
          << ("P(" + [&] {
               std::string s;
               for (long w : cf.ambient) s += (s.empty() ? "" : ",") + std::to_string(w);
               return s;
             }() + ")")
          << std::setw(7) << tag_name(classify_case(cf.fano.d)) << std::setw(12)
          << (cf.structural ? "structural" : "full") << cf.source << "\n";
    } catch (const CaseError& e) {
      err << e.what() << "\n";
      status = kInputError;
    }
  }
  return status;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type I unprojection and Sarkisov link tracing for Tom-type Fano 3-folds", "tomlink"};
  app.set_version_flag("--version", std::string("tomlink ") + TOMLINK_VERSION);
  app.require_subcommand(1);
  Flags f;
  auto* unproject = app.add_subcommand("unproject", "unprojection equations and verification");
  auto* blowup = app.add_subcommand("blowup", "Kawamata blow-up ideal of the centre");
  auto* trace = app.add_subcommand("trace", "full link trace with baskets and Picard report");
  auto* self = app.add_subcommand("selftest", "acceptance suite and golden reports");
  auto* ex = app.add_subcommand("examples", "list the bundled cases");
  for (auto* s : {unproject, blowup, trace}) add_common(s, f, true);
  for (auto* s : {self, ex}) add_common(s, f, false);
  trace->add_flag("--structural", f.run.structural, "link shape from the weights alone");
  trace->add_flag("--endpoint-quasismooth", f.run.endpoint_quasismooth,
                  "assert the endpoint is quasi-smooth for the Picard report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, eo;
    int code = app.exit(e, o, eo);
    out << o.str();
    err << eo.str();
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (self->parsed()) return selftest(f, out);
    if (ex->parsed()) return examples(f, out, err);
    CaseFile cf = parse_case(f.case_path);
    Json report;
    if (unproject->parsed()) report = unproject_report(cf, f.run);
    else if (blowup->parsed()) report = blowup_report(cf, f.run);
    else report = trace_report(cf, f.run);
    out << render_report(report, f.json);
    return report.value("ok", false) ? kOk : kVerificationFailure;
  } catch (const CaseError& e) {
    err << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kVerificationFailure;
  }
}

}  // namespace tomlink::cli
