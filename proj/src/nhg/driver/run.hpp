#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "nhg/driver/problem.hpp"

namespace nhg {

enum class Command { kLift, kCertify, kVe, kMonodromy, kAnalyze, kLiftCompare };

const char* command_name(Command c);
std::optional<Command> command_from_name(std::string_view name);

inline constexpr const char* kToolName = "nhgalois";
const char* tool_version();

/// Exit codes: 0 completed with pass or inconclusive verdicts, 1 a verdict
/// failed, 2 input error or an analysis that could not complete.
struct RunResult {
  nlohmann::json report;
  int exit_code = 0;
};

/// Never throws for bad input: errors become an "error" section and exit 2.
RunResult run(Command command, const ProblemDefinition& problem);

/// Report for failures before a problem is available (I/O, schema).
RunResult error_result(std::string_view command, const Error& error);

}  // namespace nhg
