#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "tomlink/birational.hpp"

namespace tomlink::cli {

using Json = nlohmann::json;

enum ExitCode { kOk = 0, kVerificationFailure = 1, kInputError = 2, kBudgetExceeded = 3 };

class CaseError : public std::runtime_error {
 public:
  CaseError(const std::string& source, int line, int column, std::string field, const std::string& what);

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& field() const { return field_; }

 private:
  int line_;
  int column_;
  std::string field_;
};

struct CaseFile {
  std::string path;
  std::string id;
  std::string source;
  std::array<long, 8> ambient{};  // a b c d1 d2 d3 d4 r
  int tom_index = 1;
  bool basket_complete = true;
  bool structural = false;                 // analysis = structural
  std::optional<std::uint64_t> general_seed;  // matrix = GENERAL <seed>
  WeightMatrix5 matrix_weights;
  bool matrix_weights_given = false;
  FanoCase fano;
};

CaseFile parse_case(const std::string& path);
CaseFile parse_case_text(const std::string& text, const std::string& name = "<text>");

// Completes the weights of zero entries from the homogeneity relations m_ij + m_kl = m_ik + m_jl.
WeightMatrix5 infer_matrix_weights(const std::array<Polynomial, 10>& entries);

struct RunOptions {
  std::uint64_t seed = 0;
  std::size_t budget = GroebnerOptions{}.budget;
  bool skip_saturation_oracle = false;
  bool structural = false;
  bool endpoint_quasismooth = false;
  bool timings = false;
};

Json unproject_report(const CaseFile& cf, const RunOptions& opts);
Json blowup_report(const CaseFile& cf, const RunOptions& opts);
Json trace_report(const CaseFile& cf, const RunOptions& opts);
// Indented tree with sorted keys, or a single line.
std::string render_report(const Json& report, bool single_line);

// Bundled case files, sorted by file name.
std::vector<std::string> bundled_cases(const std::string& data_dir);
std::string default_data_dir();

// Empty when equal after newline normalization, otherwise a line diff.
std::string golden_diff(const std::string& expected, const std::string& actual);

struct GoldenResult {
  std::string name;
  bool pass = false;
  std::string diff;
};
// Each data/golden/<stem>.<command>.txt against a fresh report of data/cases/<stem>.case.
std::vector<GoldenResult> check_goldens(const std::string& data_dir);
std::string golden_report(const std::string& case_path, const std::string& command);

struct CriterionResult {
  int number = 0;
  bool pass = false;
  bool skipped = false;
  bool budget_exceeded = false;
  std::vector<std::string> details;
};

struct AcceptanceOptions {
  std::string data_dir = default_data_dir();
  std::size_t budget = GroebnerOptions{}.budget;
  bool skip_saturation_oracle = false;  // criterion 4 is then reported as skipped
};

CriterionResult criterion(int number, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);
std::string format_criterion(const CriterionResult& r);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace tomlink::cli
