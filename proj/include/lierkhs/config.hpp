// config.hpp — flat key-value run configuration.
//
// Grammar: one `key = value` pair per line; `#` starts a comment; blank lines
// ignored; keys are dotted lowercase words. Unknown and duplicate keys are
// errors with line positions. The same text format round-trips losslessly
// through serialize_config/parse_config (doubles printed with %.17g).

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "groups.hpp"
#include "symbols.hpp"

namespace lierkhs {

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& msg)
        : std::runtime_error("config:" + std::to_string(line) + ": " + msg), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

struct RunConfig {
    GroupId group = GroupId::Torus1;
    SymbolFamily family = SymbolFamily::Heat;
    SymbolParams params{1.0, 0.0, 1.0, 1.0};  // t, beta, omega, gamma
    std::string symbol_file;                  // custom family source
    double lambda_max = 8.0;
    int grid_resolution = 32;
    std::vector<double> lambda_sweep{2.0, 4.0};
    std::vector<double> eps_values{0.5, 0.4, 0.3};
    bool eps_relative_to_norm = true;  // eps.scale = norm | absolute
    int cloud_size = 1024;
    double count_alpha = 0.0;
    std::vector<double> count_window{8.0, 16.0, 32.0, 64.0};
    std::uint64_t seed = 42;
    bool constants_display_convention = true;  // constants.convention = display | raw
    std::string output_dir = "out";
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<double> parse_list(const std::string& v, int line) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(v);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw ConfigError(line, "empty list element");
        std::size_t used = 0;
        double x;
        try {
            x = std::stod(item, &used);
        } catch (...) {
            throw ConfigError(line, "expected a number, got '" + item + "'");
        }
        if (used != item.size()) throw ConfigError(line, "trailing characters in '" + item + "'");
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError(line, "empty list");
    return out;
}

inline double parse_number(const std::string& v, int line) {
    std::size_t used = 0;
    double x;
    try {
        x = std::stod(v, &used);
    } catch (...) {
        throw ConfigError(line, "expected a number, got '" + v + "'");
    }
    if (used != v.size()) throw ConfigError(line, "trailing characters in '" + v + "'");
    return x;
}

inline std::string join_list(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_double(v[i]);
    }
    return out;
}

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, int> seen;  // key -> line
    std::istringstream ss(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(ss, raw)) {
        ++lineno;
        std::string line = raw;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(lineno, "expected 'key = value'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(lineno, "empty key");
        if (value.empty()) throw ConfigError(lineno, "empty value for '" + key + "'");
        if (auto it = seen.find(key); it != seen.end())
            throw ConfigError(lineno, "duplicate key '" + key + "' (first set on line " +
                                          std::to_string(it->second) + ")");
        seen[key] = lineno;

        if (key == "group") {
            if (value == "torus1") cfg.group = GroupId::Torus1;
            else if (value == "torus2") cfg.group = GroupId::Torus2;
            else if (value == "su2") cfg.group = GroupId::SU2;
            else throw ConfigError(lineno, "group must be torus1|torus2|su2");
        } else if (key == "symbol.family") {
            if (value == "heat") cfg.family = SymbolFamily::Heat;
            else if (value == "polynomial") cfg.family = SymbolFamily::Polynomial;
            else if (value == "subgaussian") cfg.family = SymbolFamily::Subgaussian;
            else if (value == "custom") cfg.family = SymbolFamily::Custom;
            else throw ConfigError(lineno, "symbol.family must be heat|polynomial|subgaussian|custom");
        } else if (key == "symbol.t") {
            cfg.params.t = detail::parse_number(value, lineno);
        } else if (key == "symbol.beta") {
            cfg.params.beta = detail::parse_number(value, lineno);
        } else if (key == "symbol.omega") {
            cfg.params.omega = detail::parse_number(value, lineno);
        } else if (key == "symbol.gamma") {
            cfg.params.gamma = detail::parse_number(value, lineno);
        } else if (key == "symbol.file") {
            cfg.symbol_file = value;
        } else if (key == "lambda_max") {
            cfg.lambda_max = detail::parse_number(value, lineno);
        } else if (key == "grid.resolution") {
            cfg.grid_resolution = static_cast<int>(detail::parse_number(value, lineno));
        } else if (key == "lambda.sweep") {
            cfg.lambda_sweep = detail::parse_list(value, lineno);
        } else if (key == "eps.values") {
            cfg.eps_values = detail::parse_list(value, lineno);
        } else if (key == "eps.scale") {
            if (value == "norm") cfg.eps_relative_to_norm = true;
            else if (value == "absolute") cfg.eps_relative_to_norm = false;
            else throw ConfigError(lineno, "eps.scale must be norm|absolute");
        } else if (key == "cover.cloud_size") {
            cfg.cloud_size = static_cast<int>(detail::parse_number(value, lineno));
        } else if (key == "count.alpha") {
            cfg.count_alpha = detail::parse_number(value, lineno);
        } else if (key == "count.window") {
            cfg.count_window = detail::parse_list(value, lineno);
        } else if (key == "seed") {
            if (value.find_first_not_of("0123456789") != std::string::npos)
                throw ConfigError(lineno, "seed must be a nonnegative integer");
            cfg.seed = std::stoull(value);
        } else if (key == "constants.convention") {
            if (value == "display") cfg.constants_display_convention = true;
            else if (value == "raw") cfg.constants_display_convention = false;
            else throw ConfigError(lineno, "constants.convention must be display|raw");
        } else if (key == "output.dir") {
            cfg.output_dir = value;
        } else {
            throw ConfigError(lineno, "unknown key '" + key + "'");
        }
    }
    return cfg;
}

// Validates module preconditions; returns a human-readable reason on failure.
inline std::string validate_config(const RunConfig& cfg) {
    const int n = group_dim(cfg.group);
    if (!(cfg.lambda_max > 1.0)) return "lambda_max must exceed 1";
    switch (cfg.family) {
        case SymbolFamily::Heat:
            if (!(cfg.params.t > 0.0)) return "symbol.t must be positive for heat";
            break;
        case SymbolFamily::Polynomial:
            if (!(cfg.params.beta > n))
                return "symbol.beta must exceed the group dimension " + std::to_string(n) +
                       " (trace class fails otherwise)";
            break;
        case SymbolFamily::Subgaussian:
            if (!(cfg.params.omega > 0.0) || !(cfg.params.gamma > 0.0))
                return "symbol.omega and symbol.gamma must be positive";
            break;
        case SymbolFamily::Custom:
            if (cfg.symbol_file.empty()) return "symbol.file is required for custom symbols";
            break;
    }
    if (cfg.grid_resolution < 2) return "grid.resolution must be >= 2";
    if (cfg.lambda_sweep.empty()) return "lambda.sweep must be nonempty";
    for (double l : cfg.lambda_sweep)
        if (!(l > 1.0) || l > cfg.lambda_max)
            return "lambda.sweep entries must lie in (1, lambda_max]";
    if (!std::is_sorted(cfg.lambda_sweep.begin(), cfg.lambda_sweep.end()))
        return "lambda.sweep must be ascending";
    for (double e : cfg.eps_values)
        if (!(e > 0.0)) return "eps.values must be positive";
    if (cfg.cloud_size < 1) return "cover.cloud_size must be >= 1";
    if (cfg.count_window.size() < 3) return "count.window needs at least 3 points";
    return "";
}

inline std::string serialize_config(const RunConfig& cfg) {
    std::ostringstream os;
    os << "group = " << group_name(cfg.group) << "\n";
    os << "symbol.family = " << family_name(cfg.family) << "\n";
    os << "symbol.t = " << format_double(cfg.params.t) << "\n";
    os << "symbol.beta = " << format_double(cfg.params.beta) << "\n";
    os << "symbol.omega = " << format_double(cfg.params.omega) << "\n";
    os << "symbol.gamma = " << format_double(cfg.params.gamma) << "\n";
    if (!cfg.symbol_file.empty()) os << "symbol.file = " << cfg.symbol_file << "\n";
    os << "lambda_max = " << format_double(cfg.lambda_max) << "\n";
    os << "grid.resolution = " << cfg.grid_resolution << "\n";
    os << "lambda.sweep = " << detail::join_list(cfg.lambda_sweep) << "\n";
    os << "eps.values = " << detail::join_list(cfg.eps_values) << "\n";
    os << "eps.scale = " << (cfg.eps_relative_to_norm ? "norm" : "absolute") << "\n";
    os << "cover.cloud_size = " << cfg.cloud_size << "\n";
    os << "count.alpha = " << format_double(cfg.count_alpha) << "\n";
    os << "count.window = " << detail::join_list(cfg.count_window) << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "constants.convention = " << (cfg.constants_display_convention ? "display" : "raw")
       << "\n";
    os << "output.dir = " << cfg.output_dir << "\n";
    return os.str();
}

// Hash of the scientific configuration; the output location does not alter
// results and is excluded, so reruns into different directories match.
inline std::string config_hash(const RunConfig& cfg) {
    RunConfig canonical = cfg;
    canonical.output_dir = "";
    return hex64(fnv1a64(serialize_config(canonical)));
}

inline bool operator==(const RunConfig& a, const RunConfig& b) {
    return serialize_config(a) == serialize_config(b);
}

}  // namespace lierkhs
