#pragma once

#include "degell/config.hpp"

#include <exception>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace degell {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitVerification = 4;

/// Outcome of a command computed entirely in memory; files are written only afterwards.
struct CommandResult {
    int status = kExitOk;
    std::string summary;
    std::vector<std::pair<std::string, std::string>> files; // name relative to the output dir, contents
};

/// Runs config.command. Library errors propagate.
CommandResult run_command(const RunConfig& config);

/// "1.00000000000000" style (15 significant digits) or "inf".
std::string format_rbar(const Params& params);

/// Exit status for an exception escaping run_command.
int exit_code_for(const std::exception& error);

/// run_command + error mapping + writing the files into config.output_dir.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace degell
