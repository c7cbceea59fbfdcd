#ifndef ESC_TOOL_COMMANDS_HPP
#define ESC_TOOL_COMMANDS_HPP

#include "config.hpp"

#include <filesystem>
#include <string>

namespace esc_tool
{

enum ExitCode { exit_ok = 0, exit_config = 2, exit_numerical = 3 };

// Each command writes into `out` and returns the process exit code. Library
// failures are caught here and recorded in the manifest; ConfigError escapes.
int cmd_map(const RunConfig &cfg, const std::filesystem::path &out);
int cmd_zeros(const RunConfig &cfg, const std::filesystem::path &out);
int cmd_stress(const RunConfig &cfg, const std::filesystem::path &out);
int cmd_sweep(const RunConfig &cfg, const std::filesystem::path &out);
int cmd_verify(const RunConfig &cfg, const std::filesystem::path &out);

int run_command(const std::string &name, const RunConfig &cfg, const std::filesystem::path &out);

} // namespace esc_tool

#endif
