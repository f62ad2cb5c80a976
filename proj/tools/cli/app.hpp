#pragma once

#include <optional>
#include <string>
#include <vector>

namespace spt_z2 {

struct CommandResult {
    int exit_code = 0;
    std::string output;      ///< report (or help text); empty when written to --output
    std::string diagnostics; ///< for stderr
};

/// Runs one `spt-z2` invocation. `args` excludes the program name;
/// `config_path` plays the role of SPT_Z2_CONFIG.
CommandResult run(std::vector<std::string> args, const std::optional<std::string> &config_path = std::nullopt);

} // namespace spt_z2
