#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace polyiso::cli {

/// Exit codes of the polyiso tool.
enum ExitCode : int {
  kOk = 0,
  kCertificationFailed = 1,  // a claim did not certify, or a bound was violated
  kBadInput = 2,             // parse error, degenerate input, invalid apex pair
  kBudgetExceeded = 3,
};

struct RunConfig {
  std::string command;  // ratio | symmetrize | strange | certify | selftest
  std::string action;   // strange: eval | realize
  std::vector<std::string> inputs;
  std::optional<std::array<double, 3>> normal;
  /// symmetrize: "" (plain), "auto", or "i,j".
  std::string apex_pair;
  std::string output;
  std::string csv;
  std::string stream;

  std::string claim = "all";  // mutant6 | volumeest | distanceest | strange5 | all
  std::string profile = "six_vertex";
  /// Five-vertex constant set: "lemma" (0.09, 17) or "text" (0.18, 11).
  std::string constants = "lemma";
  std::optional<double> area_min;
  std::optional<double> coord_max;
  double threshold = 3.44;
  double ratio = 188.0;
  bool fallback = false;  // on budget exhaustion, also run with threshold 0
  std::string verify;     // certificate file to re-validate

  std::uint64_t max_boxes = 20'000'000;
  int max_depth = 200;
  double max_seconds = 3600.0;
  int jobs = 1;

  std::array<double, 5> params{};  // x1 x2 x3 y1 y2
  std::uint64_t seed = 7;
  double tol = 1e-6;
};

/// Throws polyiso::DomainError when an invariant is broken.
void validate(const RunConfig& config);

/// Applies a JSON object whose keys are the long flag names (dashes or
/// underscores) to `config`.
void apply_config_json(RunConfig& config, const std::string& text);

int cmd_ratio(const RunConfig& config, std::ostream& out);
int cmd_symmetrize(const RunConfig& config, std::ostream& out);
int cmd_strange(const RunConfig& config, std::ostream& out);
int cmd_certify(const RunConfig& config, std::ostream& out);
int cmd_selftest(const RunConfig& config, std::ostream& out);

/// Parses arguments (flags override --config) and dispatches. Library errors
/// are mapped to exit codes; messages go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shortest round-trip decimal form.
std::string format_number(double x);

}  // namespace polyiso::cli
