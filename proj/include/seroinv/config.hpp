#pragma once

// key=value defaults for the command-line tool. Recognised keys: format,
// precision, oracle, emit. '#' starts a comment line.

#include "seroinv/dataset.hpp"

#include <cstdlib>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>

namespace seroinv {

inline constexpr const char* kConfigEnvVar = "SEROINV_CONFIG";

struct ToolConfig {
    std::optional<std::string> format;
    std::optional<int> precision;
    std::optional<bool> oracle;
    std::optional<std::string> emit;
};

inline ToolConfig parse_config(std::istream& in) {
    ToolConfig cfg;
    std::string raw;
    std::size_t line_no = 0;
    auto bad = [&](const std::string& why) { return DatasetError(DatasetError::Kind::Parse, line_no, "config: " + why); };
    while (std::getline(in, raw)) {
        ++line_no;
        const auto line = detail::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw bad("expected key=value");
        const std::string key(detail::trim(line.substr(0, eq)));
        const std::string value(detail::trim(line.substr(eq + 1)));
        if (key == "format") {
            parse_format(value);
            cfg.format = value;
        } else if (key == "precision") {
            try {
                std::size_t used = 0;
                const int p = std::stoi(value, &used);
                if (used != value.size() || p < 0 || p > 17) throw bad("precision must be 0..17");
                cfg.precision = p;
            } catch (const std::logic_error&) {
                throw bad("precision must be an integer");
            }
        } else if (key == "oracle") {
            if (value == "true" || value == "on" || value == "1") {
                cfg.oracle = true;
            } else if (value == "false" || value == "off" || value == "0") {
                cfg.oracle = false;
            } else {
                throw bad("oracle must be true/false");
            }
        } else if (key == "emit") {
            if (value != "table" && value != "csv") throw bad("emit must be table or csv");
            cfg.emit = value;
        } else {
            throw bad("unknown key '" + key + "'");
        }
    }
    return cfg;
}

inline ToolConfig load_config(const std::filesystem::path& path) {
    auto in = detail::open_input(path);
    return parse_config(in);
}

/// The explicit path if given, else $SEROINV_CONFIG, else no config.
inline ToolConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
    if (explicit_path) return load_config(*explicit_path);
    if (const char* env = std::getenv(kConfigEnvVar); env && *env) return load_config(env);
    return {};
}

}  // namespace seroinv
