#ifndef CHOQUARD_RUNNER_HPP
#define CHOQUARD_RUNNER_HPP

#include <optional>
#include <string>

#include "choquard/config.hpp"

namespace choquard {

// Dispatches one CLI command; writes artifacts under cfg.output_dir and a
// summary to stdout. Returns the process exit code: 0 pass, 1 fail.
// Configuration problems surface as config_error (the CLI maps them to 2).
int run_command(const std::string& command, const RunConfig& cfg,
                const std::optional<std::string>& oracle_filter = std::nullopt);

}  // namespace choquard

#endif
