#pragma once

#include <json.hpp>
#include <string>
#include <vector>

namespace quench::cli {

using Json = nlohmann::json;

/// Raised for malformed configuration (maps to exit code 2).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Load config from an optional JSON file, apply `--set key=value`
/// overrides (dotted paths; values parsed as JSON where possible), then
/// check every key against the command schema. Unknown keys are errors;
/// missing keys take schema defaults.
Json resolve_config(const std::string& command, const std::string& config_path,
                    const std::vector<std::string>& overrides);

/// Expand a grid-axis entry: a number, an array of numbers, or
/// {"min", "max", "steps", "scale": "lin"|"log"}.
std::vector<double> expand_axis(const Json& axis, const std::string& key);

double as_number(const Json& config, const std::string& key);
long as_integer(const Json& config, const std::string& key);

}  // namespace quench::cli
