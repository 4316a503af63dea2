// config.cpp - config parsing and the built-in sweep grids

#include "jcdress/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace jcdress::config {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (value.empty() || end == value.c_str() || *end != '\0' || !std::isfinite(v)) {
        throw std::invalid_argument("config: key '" + key + "' needs a finite number, got '" +
                                    value + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (value.empty() || end == value.c_str() || *end != '\0' || v < -1000000 || v > 1000000) {
        throw std::invalid_argument("config: key '" + key + "' needs an integer, got '" + value +
                                    "'");
    }
    return static_cast<int>(v);
}

// Pulls one axis out of kv; axis2 may be wholly absent.
sweep::AxisSpec axis_from(const KeyValues& kv, const std::string& prefix, bool required) {
    sweep::AxisSpec axis;
    const auto get = [&](const char* field) -> const std::string* {
        const auto it = kv.find(prefix + "." + field);
        return it == kv.end() ? nullptr : &it->second;
    };
    const std::string* name = get("name");
    if (!name) {
        if (required) throw std::invalid_argument("config: missing key '" + prefix + ".name'");
        if (get("scale") || get("min") || get("max") || get("count")) {
            throw std::invalid_argument("config: '" + prefix + ".*' given without '" + prefix +
                                        ".name'");
        }
        return axis; // inactive
    }
    axis.name = *name;
    if (const std::string* scale = get("scale")) axis.scale = *scale;
    for (const char* field : {"min", "max", "count"}) {
        if (!get(field)) {
            throw std::invalid_argument("config: missing key '" + prefix + "." + field + "'");
        }
    }
    axis.min = parse_double(prefix + ".min", *get("min"));
    axis.max = parse_double(prefix + ".max", *get("max"));
    axis.count = parse_int(prefix + ".count", *get("count"));
    return axis;
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty()) parts.push_back(item);
    }
    return parts;
}

} // namespace

KeyValues parse_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " is not 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config: line " + std::to_string(line_no) +
                                        " has an empty key");
        }
        if (!kv.emplace(key, value).second) {
            throw std::invalid_argument("config: duplicate key '" + key + "'");
        }
    }
    return kv;
}

KeyValues parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
    return parse_key_values(in);
}

void require_known_keys(const KeyValues& kv, const std::vector<std::string>& allowed) {
    for (const auto& [key, value] : kv) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
}

SystemParams system_params_from(const KeyValues& kv, SystemParams defaults) {
    if (const auto it = kv.find("omega_c"); it != kv.end()) {
        defaults.omega_c = parse_double(it->first, it->second);
    }
    if (const auto it = kv.find("delta"); it != kv.end()) {
        defaults.delta = parse_double(it->first, it->second);
    }
    if (const auto it = kv.find("g"); it != kv.end()) {
        defaults.g = parse_double(it->first, it->second);
    }
    if (const auto it = kv.find("gamma_scale"); it != kv.end()) {
        defaults.gamma_scale = parse_double(it->first, it->second);
    }
    if (const auto it = kv.find("zero_detuning_sign"); it != kv.end()) {
        if (it->second == "above") {
            defaults.zero_detuning_sign = ZeroDetuningSign::FromAbove;
        } else if (it->second == "below") {
            defaults.zero_detuning_sign = ZeroDetuningSign::FromBelow;
        } else {
            throw std::invalid_argument(
                "config: zero_detuning_sign must be 'above' or 'below', got '" + it->second + "'");
        }
    }
    return defaults;
}

std::string serialize(const SystemParams& params) {
    std::string out;
    const auto line = [&out](const char* key, double v) {
        out += key;
        out += " = ";
        out += sweep::format_value(v);
        out += '\n';
    };
    line("omega_c", params.omega_c);
    line("delta", params.delta);
    line("g", params.g);
    if (params.gamma_scale) line("gamma_scale", *params.gamma_scale);
    out += "zero_detuning_sign = ";
    out += params.zero_detuning_sign == ZeroDetuningSign::FromAbove ? "above" : "below";
    out += '\n';
    return out;
}

sweep::GridSpec grid_spec_from(const KeyValues& kv) {
    std::vector<std::string> allowed = kSystemParamKeys;
    allowed.insert(allowed.end(), {"hop_j", "outputs"});
    for (const char* prefix : {"axis1", "axis2"}) {
        for (const char* field : {"name", "scale", "min", "max", "count"}) {
            allowed.push_back(std::string(prefix) + "." + field);
        }
    }
    require_known_keys(kv, allowed);

    sweep::GridSpec spec;
    spec.base = system_params_from(kv);
    spec.axis1 = axis_from(kv, "axis1", true);
    spec.axis2 = axis_from(kv, "axis2", false);
    if (const auto it = kv.find("hop_j"); it != kv.end()) {
        spec.hop_j = parse_double(it->first, it->second);
    }
    const auto outputs = kv.find("outputs");
    if (outputs == kv.end()) throw std::invalid_argument("config: missing key 'outputs'");
    spec.outputs = split_list(outputs->second);
    spec.validate();
    return spec;
}

sweep::GridSpec preset(const std::string& name) {
    sweep::GridSpec spec;
    spec.base.omega_c = 1000.0;
    spec.base.g = 1.0;
    if (name == "fig3") {
        spec.axis1 = {"delta", "linear", -10.0, 10.0, 41};
        spec.axis2 = {"g", "linear", 0.25, 5.0, 20};
        spec.outputs = {"coeffs:3"};
    } else if (name == "fig5") {
        spec.axis1 = {"lambda", "log", 1e-2, 1e2, 201};
        spec.hop_j = 1.0;
        spec.outputs = {"jeff", "ueff", "outcoupling", "ratio"};
    } else if (name == "fig6") {
        spec.axis1 = {"lambda", "log", 1e-2, 1e2, 50};
        spec.axis2 = {"hop_j_over_g", "log", 1e-3, 1e2, 50};
        spec.outputs = {"var", "overlaps", "ratio", "energy"};
    } else {
        throw std::invalid_argument("preset: unknown name '" + name +
                                    "' (expected fig3, fig5, or fig6)");
    }
    spec.validate();
    return spec;
}

std::vector<std::string> preset_names() { return {"fig3", "fig5", "fig6"}; }

} // namespace jcdress::config
