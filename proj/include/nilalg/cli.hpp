#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nilalg/construction.hpp"
#include "nilalg/report.hpp"

namespace nilalg {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfig = 2, kExitBudget = 3 };

struct RunConfig {
  /// "default" (real mode, no explicit members), a path to a schedule file, or an inline schedule.
  std::string schedule = "default";
  nlohmann::json schedule_inline;
  std::uint32_t field = 2;
  Engine engine = Engine::automatic;
  std::size_t max_level = 10;
  std::size_t max_degree = 256;
  std::size_t budget_mb = 2048;
  std::string suite = "all";
  std::string out = "nilalg-store";
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string poly;
  unsigned exponent = 1;
  std::optional<std::pair<std::size_t, std::size_t>> window;
};

/// Applies the keys of a JSON config object (same names as the flags, with '_' for '-').
void apply_config_json(RunConfig& cfg, const nlohmann::json& j);
/// Checks budgets and engine limits; throws PreconditionError or BudgetExceeded.
void validate_config(const RunConfig& cfg);

/// The suites understood by `verify`.
const std::vector<std::string>& suite_names();

/// Runs the tool with the given arguments (without the program name); returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace nilalg
