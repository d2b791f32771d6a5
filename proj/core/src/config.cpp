#include "towbandit/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace towbandit::cli {

using harness::ConfigError;

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double to_double(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed number for " + what + ": '" + text + "'");
    }
}

std::uint64_t to_u64(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed integer for " + what + ": '" + text + "'");
    }
}

bool to_bool(const std::string& text, const std::string& what) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("malformed boolean for " + what + ": '" + text + "'");
}

}  // namespace

KeyValues parse_config_text(const std::string& text) {
    KeyValues out;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#' || t[0] == ';') continue;
        if (t.front() == '[') {
            if (t.back() != ']') {
                throw ConfigError("config line " + std::to_string(lineno) +
                                  ": unterminated section header");
            }
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) +
                              ": expected key = value");
        }
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        }
        if (!section.empty()) key = section + "." + key;
        out[key] = value;
    }
    return out;
}

KeyValues load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::vector<double> parse_probs(const std::string& text) {
    std::vector<double> probs;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        probs.push_back(to_double(trim(item), "probs"));
    }
    if (probs.size() < 2) {
        throw ConfigError("probs needs at least two comma-separated values");
    }
    return probs;
}

std::vector<SwitchEntry> parse_switch_schedule(const std::string& text) {
    std::vector<SwitchEntry> schedule;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        auto colon = part.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("switch entry needs the form t:p1,p2,... got '" + part + "'");
        }
        SwitchEntry entry;
        entry.t = to_u64(trim(part.substr(0, colon)), "switch time");
        entry.probs = parse_probs(part.substr(colon + 1));
        schedule.push_back(std::move(entry));
    }
    return schedule;
}

std::vector<double> parse_grid(const std::string& text) {
    std::istringstream in(text);
    std::string a, b, c;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, c)) {
        throw ConfigError("grid needs the form start:stop:step, got '" + text + "'");
    }
    double start = to_double(trim(a), "grid start");
    double stop = to_double(trim(b), "grid stop");
    double step = to_double(trim(c), "grid step");
    if (!(step > 0.0)) throw ConfigError("grid step must be positive");
    if (stop < start) throw ConfigError("grid stop must be >= start");
    std::vector<double> grid;
    // endpoints inclusive within half a step
    for (double v = start; v <= stop + 0.5 * step; v += step) {
        grid.push_back(std::min(v, stop));
    }
    return grid;
}

harness::RunConfig run_config_from_keys(const KeyValues& keys) {
    harness::RunConfig config;
    // default fluctuation for TOW: i.i.d. uniform noise, amplitude 0.5
    config.policy.fluct.kind = tow::FluctKind::UniformNoise;
    config.policy.fluct.amplitude = 0.5;
    std::string algo = "tow";
    std::string omega = "auto";
    for (const auto& [key, value] : keys) {
        if (key == "probs") {
            config.probs = parse_probs(value);
        } else if (key == "switch") {
            config.switch_schedule = parse_switch_schedule(value);
        } else if (key == "horizon") {
            config.horizon = to_u64(value, key);
        } else if (key == "trials") {
            config.trials = to_u64(value, key);
        } else if (key == "seed") {
            config.base_seed = to_u64(value, key);
        } else if (key == "record_stride") {
            config.record_stride = to_u64(value, key);
        } else if (key == "policy.algo" || key == "algo") {
            algo = value;
        } else if (key == "policy.omega" || key == "omega") {
            omega = value;
        } else if (key == "fluct.kind") {
            if (value == "none") config.policy.fluct.kind = tow::FluctKind::None;
            else if (value == "uniform") config.policy.fluct.kind = tow::FluctKind::UniformNoise;
            else if (value == "gaussian") config.policy.fluct.kind = tow::FluctKind::GaussianNoise;
            else if (value == "oscillation") config.policy.fluct.kind = tow::FluctKind::Oscillation;
            else throw ConfigError("unknown fluct.kind '" + value + "'");
        } else if (key == "fluct.amplitude") {
            config.policy.fluct.amplitude = to_double(value, key);
            if (config.policy.fluct.amplitude < 0.0) {
                throw ConfigError("fluct.amplitude must be >= 0");
            }
        } else if (key == "fluct.period") {
            config.policy.fluct.period = to_u64(value, key);
            if (config.policy.fluct.period == 0) {
                throw ConfigError("fluct.period must be >= 1");
            }
        } else if (key == "fluct.shared") {
            config.policy.fluct.shared = to_bool(value, key);
        } else if (key == "out") {
            // handled by the CLI, accepted here so config files can set it
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }

    auto fluct = config.policy.fluct;
    config.policy = harness::parse_policy(algo);
    config.policy.fluct = fluct;
    if (config.policy.kind == harness::PolicySpec::Kind::Tow) {
        if (omega == "auto") {
            config.policy.omega.kind = harness::OmegaSetting::Kind::Auto;
        } else if (omega == "adaptive") {
            config.policy.omega.kind = harness::OmegaSetting::Kind::Adaptive;
        } else {
            config.policy.omega.kind = harness::OmegaSetting::Kind::Fixed;
            config.policy.omega.value = to_double(omega, "omega");
            if (config.policy.omega.value < 0.0) {
                throw ConfigError("omega must be >= 0");
            }
        }
    }
    return config;
}

}  // namespace towbandit::cli
