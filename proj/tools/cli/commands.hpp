#pragma once

#include <string>

#include "config.hpp"

namespace quench::cli {

struct RunOptions {
    std::string out_dir = ".";
    int workers = 1;
    long seed = 0;
};

/// Execute one subcommand with a resolved config. Returns the process exit
/// code contribution: 0 on success; throws ConfigError for bad parameters
/// (exit 2) and other exceptions for numerical failures (exit 3).
void run_command(const std::string& command, const Json& config,
                 const RunOptions& opt);

}  // namespace quench::cli
