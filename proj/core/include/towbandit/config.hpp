#pragma once

#include <map>
#include <string>

#include "towbandit/harness.hpp"

namespace towbandit::cli {

/// Flat key -> value view of a config file. `[section]` headers prefix the
/// keys that follow ("fluct" + "kind" -> "fluct.kind"); values keep their
/// raw text. Lines starting with '#' (or ';') are comments.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_config_text(const std::string& text);
KeyValues load_config_file(const std::string& path);

/// Builds a RunConfig from merged key/values. Recognized keys:
///   probs, switch, horizon, trials, seed, record_stride,
///   policy.algo, policy.omega, fluct.kind, fluct.amplitude, fluct.period,
///   fluct.shared
/// Unknown keys raise ConfigError.
harness::RunConfig run_config_from_keys(const KeyValues& keys);

/// "0.6,0.4" -> {0.6, 0.4}
std::vector<double> parse_probs(const std::string& text);

/// "500:0.4,0.6;900:0.5,0.5" -> schedule entries (t, probs)
std::vector<SwitchEntry> parse_switch_schedule(const std::string& text);

/// "start:stop:step", endpoints inclusive within half a step.
std::vector<double> parse_grid(const std::string& text);

}  // namespace towbandit::cli
