#ifndef BG_HARNESS_HPP
#define BG_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bg/serialization.hpp"

namespace bg {

/// Bad command line or configuration; maps to exit status 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExperimentInfo {
  std::string id;
  std::string anchor;  // the statement the experiment checks
};

const std::vector<ExperimentInfo>& experiments();
bool is_experiment(const std::string& id);

inline constexpr int kSchemaVersion = 1;

struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 0;
  std::size_t samples = 20000;
  std::optional<std::size_t> grid;  // grid points per axis for grid experiments
  Json parameters = Json::object();
};

/// {"experiment"?, "seed"?, "samples"?, "grid"?, "parameters"?}. Throws
/// UsageError for unknown keys, wrong types, or an "experiment" field that
/// disagrees with `id`.
ExperimentConfig config_from_json(const Json& j, const std::string& id);
Json config_to_json(const ExperimentConfig& cfg);

/// Relations: "<=" and ">=" pass when margin >= -tolerance, "<" when
/// margin > 0, "==" when |lhs - rhs| <= tolerance; "report" rows are not judged.
struct ReportRow {
  std::string case_label;
  std::string check;  // assertion or quantity name
  std::vector<std::pair<std::string, std::string>> inputs;
  double lhs = 0.0;
  double rhs = 0.0;
  double constant = 0.0;
  double margin = 0.0;
  double std_error = 0.0;
  double tolerance = 0.0;
  std::string relation = "report";
  bool asserted = false;
  bool passed = true;
};

struct AssertionSummary {
  std::string check;
  std::size_t rows = 0;
  std::size_t failed = 0;
  double worst_margin = 0.0;  // smallest margin + tolerance over judged rows
  bool passed() const { return failed == 0; }
};

struct Report {
  std::string experiment;
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::map<std::string, double> empirical_constants;
  Json cases = Json::object();  // serialized inputs per case label

  std::vector<AssertionSummary> assertions() const;
  bool passed() const;
};

/// Sets margin and passed from lhs, rhs, tolerance and relation.
void judge(ReportRow& row);

/// Runs one experiment. Throws UsageError for an unknown id or an invalid
/// parameter (naming it) before any computation.
Report run_experiment(const std::string& id, const ExperimentConfig& cfg);

/// "# schema_version=1" then a header and one row per ReportRow; floats use
/// 17 significant digits.
std::string to_csv(const Report& report);
Json summary_json(const Report& report);

/// `run <id> --config <json> --out <csv> [--seed U64] [--samples N] [--grid N]`
/// and `list`. Returns 0 when every assertion passes, 1 on an assertion
/// failure, 2 on a usage error.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace bg

#endif  // BG_HARNESS_HPP
