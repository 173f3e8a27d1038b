#include "config.hpp"

#include <cmath>
#include <fstream>
#include <map>

namespace quench::cli {

namespace {

enum class Field { Number, Integer, Axis, Pulse, NumberArray };

struct Spec {
    Field field;
    Json default_value;
};

using Schema = std::map<std::string, Spec>;

const Schema& schema_for(const std::string& command) {
    static const std::map<std::string, Schema> schemas = {
        {"equilibrium",
         {
             {"omega0", {Field::Number, 1.0}},
             {"gamma", {Field::Axis, 0.1}},
             {"temperature", {Field::Axis, Json{{"min", 0.1}, {"max", 10.0}, {"steps", 16}, {"scale", "log"}}}},
             {"omega_d", {Field::Axis, Json{{"min", 0.1}, {"max", 100.0}, {"steps", 16}, {"scale", "log"}}}},
         }},
        {"negativity",
         {
             {"omega0", {Field::Number, 1.0}},
             {"c0", {Field::Axis, Json::array({0.05, 0.10, 0.15, 0.20})}},
             {"gamma", {Field::Axis, Json::array({0.1, 0.05, 0.01, 0.005})}},
             {"temperature", {Field::Axis, Json{{"min", 0.02}, {"max", 1.0}, {"steps", 16}, {"scale", "log"}}}},
             {"omega_d", {Field::Axis, Json{{"min", 0.1}, {"max", 100.0}, {"steps", 16}, {"scale", "log"}}}},
         }},
        {"cooling-limits",
         {
             {"omega_m", {Field::Number, 1.0}},
             {"kappa", {Field::Number, 1e-5}},
             {"omega_c", {Field::Axis, Json{{"min", 0.5}, {"max", 100.0}, {"steps", 32}, {"scale", "log"}}}},
         }},
        {"cool",
         {
             {"omega_m", {Field::Number, 1.0}},
             {"gamma", {Field::Axis, 1e-5}},
             {"kappa", {Field::Number, 2.15e-4}},
             {"n_t", {Field::Number, 100.0}},
             {"n_cav", {Field::Number, 0.0}},
             {"t_f_periods", {Field::Number, 50.0}},
             {"dt_per_period", {Field::Integer, 2000}},
             {"output_stride", {Field::Integer, 20}},
             {"pulse", {Field::Pulse, Json{{"kind", "constant"}, {"value", 0.1}}}},
         }},
        {"optimize",
         {
             {"omega_m", {Field::Number, 1.0}},
             {"gamma", {Field::Axis, 1e-5}},
             {"kappa", {Field::Number, -1.0}},  // <= 0 means kappa = gamma
             {"n_t", {Field::Number, 100.0}},
             {"n_cav", {Field::Number, 0.0}},
             {"n_segments", {Field::Integer, 12}},
             {"t_f", {Field::Number, 1.1 * M_PI}},
             {"tau", {Field::Number, 1.0}},
             {"epsilon", {Field::Number, 1e-3}},
             {"max_iters", {Field::Integer, 250}},
             {"dt_per_period", {Field::Integer, 2000}},
             {"initial_g", {Field::Number, 0.01}},
             {"g_max", {Field::Number, 0.0}},
             {"output_stride", {Field::Integer, 10}},
         }},
        {"maintain",
         {
             {"omega_m", {Field::Number, 1.0}},
             {"gamma", {Field::Axis, 1e-6}},
             {"kappa", {Field::Number, 0.05}},
             {"n_t", {Field::Number, 100.0}},
             {"n_cav", {Field::Number, 0.0}},
             {"n_segments", {Field::Integer, 12}},
             {"t_f", {Field::Number, 1.1 * M_PI}},
             {"tau", {Field::Number, 1.0}},
             {"epsilon", {Field::Number, 1e-3}},
             {"max_iters", {Field::Integer, 250}},
             {"dt_per_period", {Field::Integer, 2000}},
             {"initial_g", {Field::Number, 0.01}},
             {"k_grid", {Field::NumberArray, Json::array({0.02, 0.05, 0.1})}},
             {"window_periods", {Field::Number, 50.0}},
             {"segments_per_period", {Field::Integer, 12}},
             {"maint_max_iters", {Field::Integer, 150}},
             {"maint_dt_per_period", {Field::Integer, 500}},
             {"refine_rounds", {Field::Integer, 0}},
             {"output_stride", {Field::Integer, 20}},
         }},
    };
    auto it = schemas.find(command);
    if (it == schemas.end()) {
        throw ConfigError("unknown command: " + command);
    }
    return it->second;
}

void check_field(const std::string& key, const Spec& spec, const Json& value) {
    switch (spec.field) {
        case Field::Number:
            if (!value.is_number()) {
                throw ConfigError("config key '" + key + "' must be a number");
            }
            break;
        case Field::Integer:
            if (!value.is_number_integer()) {
                throw ConfigError("config key '" + key + "' must be an integer");
            }
            break;
        case Field::Axis:
            expand_axis(value, key);  // validates
            break;
        case Field::NumberArray:
            if (!value.is_array() || value.empty()) {
                throw ConfigError("config key '" + key +
                                  "' must be a non-empty array of numbers");
            }
            for (const auto& v : value) {
                if (!v.is_number()) {
                    throw ConfigError("config key '" + key +
                                      "' must contain numbers only");
                }
            }
            break;
        case Field::Pulse: {
            if (!value.is_object() || !value.contains("kind")) {
                throw ConfigError("config key '" + key +
                                  "' must be an object with a 'kind'");
            }
            const std::string kind = value.at("kind");
            if (kind == "constant") {
                if (!value.contains("value") || !value.at("value").is_number()) {
                    throw ConfigError("constant pulse needs a numeric 'value'");
                }
            } else if (kind == "segments") {
                if (!value.contains("values") || !value.at("values").is_array() ||
                    value.at("values").empty()) {
                    throw ConfigError("segments pulse needs non-empty 'values'");
                }
            } else {
                throw ConfigError("pulse kind must be 'constant' or 'segments'");
            }
            for (auto it = value.begin(); it != value.end(); ++it) {
                if (it.key() != "kind" && it.key() != "value" &&
                    it.key() != "values") {
                    throw ConfigError("unknown pulse key '" + it.key() + "'");
                }
            }
            break;
        }
    }
}

void apply_override(Json& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--set expects key=value, got '" + assignment + "'");
    }
    const std::string path = assignment.substr(0, eq);
    const std::string raw = assignment.substr(eq + 1);
    Json value;
    try {
        value = Json::parse(raw);
    } catch (const Json::parse_error&) {
        value = raw;  // plain string
    }
    Json* node = &config;
    std::size_t start = 0;
    for (;;) {
        const auto dot = path.find('.', start);
        const std::string part = path.substr(
            start, dot == std::string::npos ? std::string::npos : dot - start);
        if (part.empty()) throw ConfigError("--set: empty path component");
        if (dot == std::string::npos) {
            (*node)[part] = value;
            break;
        }
        node = &(*node)[part];
        start = dot + 1;
    }
}

}  // namespace

std::vector<double> expand_axis(const Json& axis, const std::string& key) {
    std::vector<double> out;
    if (axis.is_number()) {
        out.push_back(axis.get<double>());
    } else if (axis.is_array()) {
        if (axis.empty()) {
            throw ConfigError("axis '" + key + "' must be non-empty");
        }
        for (const auto& v : axis) {
            if (!v.is_number()) {
                throw ConfigError("axis '" + key + "' must contain numbers");
            }
            out.push_back(v.get<double>());
        }
    } else if (axis.is_object()) {
        for (auto it = axis.begin(); it != axis.end(); ++it) {
            if (it.key() != "min" && it.key() != "max" && it.key() != "steps" &&
                it.key() != "scale") {
                throw ConfigError("axis '" + key + "': unknown key '" +
                                  it.key() + "'");
            }
        }
        if (!axis.contains("min") || !axis.contains("max") ||
            !axis.contains("steps")) {
            throw ConfigError("axis '" + key + "' needs min, max, steps");
        }
        const double lo = axis.at("min").get<double>();
        const double hi = axis.at("max").get<double>();
        const long steps = axis.at("steps").get<long>();
        const std::string scale = axis.value("scale", "lin");
        if (steps < 1 || hi < lo) {
            throw ConfigError("axis '" + key + "': need steps >= 1, max >= min");
        }
        if (scale != "lin" && scale != "log") {
            throw ConfigError("axis '" + key + "': scale must be lin or log");
        }
        if (scale == "log" && lo <= 0.0) {
            throw ConfigError("axis '" + key + "': log scale needs min > 0");
        }
        if (steps == 1) {
            out.push_back(lo);
        } else {
            for (long i = 0; i < steps; ++i) {
                const double u = static_cast<double>(i) / (steps - 1);
                out.push_back(scale == "log"
                                  ? lo * std::pow(hi / lo, u)
                                  : lo + (hi - lo) * u);
            }
        }
    } else {
        throw ConfigError("axis '" + key +
                          "' must be a number, array, or {min,max,steps,scale}");
    }
    for (double v : out) {
        if (!std::isfinite(v)) {
            throw ConfigError("axis '" + key + "' contains non-finite values");
        }
    }
    return out;
}

Json resolve_config(const std::string& command, const std::string& config_path,
                    const std::vector<std::string>& overrides) {
    const Schema& schema = schema_for(command);
    Json config = Json::object();
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) {
            throw ConfigError("cannot open config file: " + config_path);
        }
        try {
            in >> config;
        } catch (const Json::parse_error& e) {
            throw ConfigError(std::string("config parse error: ") + e.what());
        }
        if (!config.is_object()) {
            throw ConfigError("config root must be a JSON object");
        }
    }
    for (const auto& ov : overrides) apply_override(config, ov);

    for (auto it = config.begin(); it != config.end(); ++it) {
        if (schema.find(it.key()) == schema.end()) {
            throw ConfigError("unknown config key '" + it.key() +
                              "' for command " + command);
        }
    }
    for (const auto& [key, spec] : schema) {
        if (!config.contains(key)) config[key] = spec.default_value;
        check_field(key, spec, config.at(key));
    }
    return config;
}

double as_number(const Json& config, const std::string& key) {
    return config.at(key).get<double>();
}

long as_integer(const Json& config, const std::string& key) {
    return config.at(key).get<long>();
}

}  // namespace quench::cli
