// config.hpp - flat key=value config files: system parameters and sweep grids

#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "jcdress/params.hpp"
#include "jcdress/sweep.hpp"

namespace jcdress::config {

using KeyValues = std::map<std::string, std::string>;

// Lines of "key = value"; '#' starts a comment; blank lines ignored.
// Duplicate keys are rejected.
KeyValues parse_key_values(std::istream& in);
KeyValues parse_file(const std::string& path);

// Rejects any key not in `allowed`, naming the offender.
void require_known_keys(const KeyValues& kv, const std::vector<std::string>& allowed);

// System-parameter keys: omega_c, delta, g, gamma_scale, zero_detuning_sign
// (above | below). Unlisted keys are left untouched in `defaults`.
SystemParams system_params_from(const KeyValues& kv, SystemParams defaults = {});
std::string serialize(const SystemParams& params);

inline const std::vector<std::string> kSystemParamKeys{
    "omega_c", "delta", "g", "gamma_scale", "zero_detuning_sign"};

// Grid keys: the system-parameter keys plus hop_j, outputs (comma-separated
// column groups), axis1.{name,scale,min,max,count} and optionally axis2.*.
sweep::GridSpec grid_spec_from(const KeyValues& kv);

// Built-in grids: fig3 (coefficient landscape over detuning and coupling),
// fig5 (effective hoppings and outcouplings over lambda), fig6 (two-site
// phase survey over lambda and hopping). Throws on unknown names.
sweep::GridSpec preset(const std::string& name);
std::vector<std::string> preset_names();

} // namespace jcdress::config
