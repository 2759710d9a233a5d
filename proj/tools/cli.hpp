#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "permgrid/class_analysis.hpp"

namespace permgrid::cli {

inline constexpr const char* tool_version = "1.0.0";

enum ExitCode : int {
  ok = 0,
  failure = 1,
  parse_error = 2,
  precondition_error = 3,
  resource_error = 4,
  verification_failed = 5,
};

struct Outcome {
  int exit_code = ExitCode::ok;
  std::string out;
  std::string err;
};

/// Runs one command line (args exclude the program name) and captures output.
Outcome run(const std::vector<std::string>& args);

using nlohmann::json;

json cmd_classify(const FiniteBasis& basis, std::optional<std::size_t> horizon, std::size_t memory_cap);
json cmd_enumerate(const FiniteBasis& basis, std::size_t horizon, std::size_t memory_cap);
json cmd_grid_member(const GridMatrix& m, const Permutation& pi);
json cmd_greedy(const GridMatrix& m, const Permutation& pi);
json cmd_cover(const Permutation& pi, const RectCover& cover);
json cmd_downset(const VecDownset& d, std::size_t horizon);
json cmd_series(const std::string& name, std::size_t horizon);

/// Re-checks a report produced by any command. Returns the list of failures.
std::vector<std::string> verify_report(const json& report);

json verdict_to_json(const DichotomyVerdict& v);
DichotomyVerdict verdict_from_json(const json& j);

/// Flattened "path  value" lines for --format table.
std::string to_table(const json& report);

} // namespace permgrid::cli
