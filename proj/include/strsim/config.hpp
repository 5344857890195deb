#pragma once
// Run configuration: flat key = value text files over SimConfig defaults.

#include <string>
#include <string_view>

#include "strsim/engine.hpp"

namespace strsim {

// Parses a flat key = value document ('#' starts a comment). Unknown keys,
// malformed values and domain violations raise ConfigError naming the key.
// Unspecified keys keep their defaults. lambda_ca / lambda_hd are derived as
// complements when only one side of a pair is given.
SimConfig parse_config(std::string_view text);

SimConfig load_config(const std::string& path);

// Applies one key to a config; shared by the file parser and CLI overrides.
void apply_config_key(SimConfig& cfg, std::string_view key, std::string_view value);

}  // namespace strsim
