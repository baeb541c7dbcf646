#pragma once

#include <string>

#include <json.hpp>

namespace adhoc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// Parse argv and execute one subcommand. Exit codes: 0 success, 1 runtime
/// failure, 2 usage/validation error.
int run(int argc, const char* const* argv);

/// Execute a command from its parameter set (what `rerun` replays from a
/// manifest). Throws on failure.
void run_command(const std::string& name, const nlohmann::json& params);

}  // namespace adhoc::cli
