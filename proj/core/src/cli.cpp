#include "towbandit/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "towbandit/analysis.hpp"
#include "towbandit/config.hpp"

namespace towbandit::cli {

using harness::ConfigError;

namespace {

// Env/run flags shared by run, compare, and sweep. Values are kept as raw
// strings so config-file values and flags merge through one code path.
struct RawRunFlags {
    std::string config_path;
    std::string algo, omega, probs, switch_sched;
    std::string horizon, trials, seed, stride;
    std::string fluct_kind, fluct_amplitude, fluct_period, fluct_shared;
    std::string out;

    CLI::Option* algo_opt = nullptr;

    void attach(CLI::App* app, bool with_algo) {
        app->add_option("--config", config_path, "Config file (key = value, [section] tables)");
        if (with_algo) {
            algo_opt = app->add_option(
                "--algo", algo,
                "Policy: tow | cheater | egreedy:<e> | softmax:<tau> | ucb1 | "
                "ucb1tuned | random | randomwalk:<a>,<b>");
        }
        app->add_option("--omega", omega, "TOW weight: auto | adaptive | <number>");
        app->add_option("--probs", probs, "Reward probabilities, e.g. 0.6,0.4");
        app->add_option("--switch", switch_sched,
                        "Switch schedule t:probs[;t:probs...], e.g. 500:0.4,0.6");
        app->add_option("--horizon", horizon, "Steps per trial");
        app->add_option("--trials", trials, "Number of independent trials");
        app->add_option("--seed", seed, "Base seed (64-bit)");
        app->add_option("--stride", stride, "Record every k-th step (default 10)");
        app->add_option("--fluct-kind", fluct_kind,
                        "Fluctuation: none | uniform | gaussian | oscillation");
        app->add_option("--fluct-amplitude", fluct_amplitude, "Fluctuation amplitude");
        app->add_option("--fluct-period", fluct_period, "Oscillation period");
        app->add_option("--fluct-shared", fluct_shared,
                        "true = one draw per step with alternating sign");
        app->add_option("--out", out, "Output CSV path");
    }

    // config-file values first, then every flag that was actually given
    KeyValues merge(CLI::App* app) const {
        KeyValues keys;
        if (!config_path.empty()) keys = load_config_file(config_path);
        auto put = [&](const char* flag, const char* key, const std::string& value) {
            CLI::Option* opt = app->get_option_no_throw(flag);
            if (opt != nullptr && opt->count() > 0) keys[key] = value;
        };
        put("--algo", "policy.algo", algo);
        put("--omega", "policy.omega", omega);
        put("--probs", "probs", probs);
        put("--switch", "switch", switch_sched);
        put("--horizon", "horizon", horizon);
        put("--trials", "trials", trials);
        put("--seed", "seed", seed);
        put("--stride", "record_stride", stride);
        put("--fluct-kind", "fluct.kind", fluct_kind);
        put("--fluct-amplitude", "fluct.amplitude", fluct_amplitude);
        put("--fluct-period", "fluct.period", fluct_period);
        put("--fluct-shared", "fluct.shared", fluct_shared);
        put("--out", "out", out);
        return keys;
    }
};

harness::RunConfig build_run_config(const KeyValues& keys) {
    harness::RunConfig config = run_config_from_keys(keys);
    if (config.probs.empty()) {
        throw UsageError("missing --probs (or a config file providing probs)");
    }
    return config;
}

std::string out_or(const KeyValues& keys, const std::string& flag_value,
                   const std::string& fallback) {
    if (!flag_value.empty()) return flag_value;
    if (auto it = keys.find("out"); it != keys.end() && !it->second.empty()) {
        return it->second;
    }
    return fallback;
}

}  // namespace

Command parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"Tug-of-war bandit toolkit: policies, bounds, and Monte Carlo runs"};
    app.require_subcommand(0, 1);

    CLI::App* run_cmd = app.add_subcommand("run", "Run one policy and write regret curves");
    CLI::App* compare_cmd =
        app.add_subcommand("compare", "Run several policies on common random numbers");
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run one policy over a parameter grid");
    CLI::App* bound_cmd =
        app.add_subcommand("bound", "Print analytic separation parameters and regret bounds");

    RawRunFlags run_flags, compare_flags, sweep_flags;
    run_flags.attach(run_cmd, true);
    compare_flags.attach(compare_cmd, false);
    std::string algos;
    compare_cmd->add_option("--algos", algos, "Comma-separated policies, e.g. tow,ucb1")
        ->required();
    sweep_flags.attach(sweep_cmd, true);
    std::string sweep_param, sweep_grid;
    sweep_cmd->add_option("--param", sweep_param, "Parameter: omega | epsilon | tau | amplitude")
        ->required();
    sweep_cmd->add_option("--grid", sweep_grid, "Grid start:stop:step (endpoints inclusive)")
        ->required();

    std::string mu_a, mu_b, bound_horizon = "1000";
    bool bound_json = false;
    bound_cmd->add_option("--mu-a", mu_a, "Better machine's reward probability")->required();
    bound_cmd->add_option("--mu-b", mu_b, "Worse machine's reward probability")->required();
    bound_cmd->add_option("--horizon", bound_horizon, "Finite-N horizon for the bounds");
    bound_cmd->add_flag("--json", bound_json, "Print the report as JSON only");

    try {
        std::vector<std::string> args;
        for (std::size_t i = argv.size(); i > 1; --i) args.push_back(argv[i - 1]);
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream os;
        os << app.help();
        throw HelpRequested{os.str()};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    auto to_double_flag = [](const std::string& text, const char* what) {
        try {
            std::size_t pos = 0;
            double v = std::stod(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return v;
        } catch (const std::exception&) {
            throw UsageError(std::string("malformed number for ") + what + ": '" + text + "'");
        }
    };
    auto to_u64_flag = [](const std::string& text, const char* what) {
        try {
            std::size_t pos = 0;
            unsigned long long v = std::stoull(text, &pos);
            if (pos != text.size()) throw std::invalid_argument(text);
            return static_cast<std::uint64_t>(v);
        } catch (const std::exception&) {
            throw UsageError(std::string("malformed integer for ") + what + ": '" + text + "'");
        }
    };

    Command cmd;
    try {
        if (run_cmd->parsed()) {
            cmd.kind = Command::Kind::Run;
            KeyValues keys = run_flags.merge(run_cmd);
            cmd.run = build_run_config(keys);
            cmd.out = out_or(keys, run_flags.out, "results.csv");
        } else if (compare_cmd->parsed()) {
            cmd.kind = Command::Kind::Compare;
            KeyValues keys = compare_flags.merge(compare_cmd);
            cmd.run = build_run_config(keys);
            cmd.out = out_or(keys, compare_flags.out, "compare.csv");
            std::istringstream in(algos);
            std::string token;
            while (std::getline(in, token, ',')) {
                if (!token.empty()) cmd.compare_algos.push_back(token);
            }
            if (cmd.compare_algos.empty()) throw UsageError("--algos needs at least one policy");
            for (const auto& t : cmd.compare_algos) (void)harness::parse_policy(t);
        } else if (sweep_cmd->parsed()) {
            cmd.kind = Command::Kind::Sweep;
            KeyValues keys = sweep_flags.merge(sweep_cmd);
            cmd.run = build_run_config(keys);
            cmd.out = out_or(keys, sweep_flags.out, "sweep.csv");
            cmd.sweep_param = sweep_param;
            if (sweep_param != "omega" && sweep_param != "epsilon" && sweep_param != "tau" &&
                sweep_param != "amplitude") {
                throw UsageError("unknown sweep parameter '" + sweep_param +
                                 "' (expected omega, epsilon, tau, or amplitude)");
            }
            cmd.sweep_grid = parse_grid(sweep_grid);
        } else if (bound_cmd->parsed()) {
            cmd.kind = Command::Kind::Bound;
            cmd.mu_a = to_double_flag(mu_a, "--mu-a");
            cmd.mu_b = to_double_flag(mu_b, "--mu-b");
            cmd.bound_horizon = to_u64_flag(bound_horizon, "--horizon");
            cmd.bound_json_only = bound_json;
            if (!(cmd.mu_a > cmd.mu_b)) throw UsageError("--mu-a must exceed --mu-b");
        } else {
            std::ostringstream os;
            os << app.help();
            throw HelpRequested{os.str()};
        }
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    }
    return cmd;
}

namespace {

nlohmann::json bound_report_json(const analysis::BoundReport& r) {
    auto line = [](const analysis::BoundReport::Line& cheater,
                   const analysis::BoundReport::Line& tow,
                   double analysis::BoundReport::Line::*field) {
        return nlohmann::json{{"cheater", cheater.*field}, {"tow", tow.*field}};
    };
    return nlohmann::json{
        {"mu_a", r.mu_a},
        {"mu_b", r.mu_b},
        {"horizon", r.horizon},
        {"phi", r.phi},
        {"phi_t", r.phi_t},
        {"e_nb_bound", line(r.cheater, r.tow, &analysis::BoundReport::Line::e_nb_bound)},
        {"e_nb_limit", line(r.cheater, r.tow, &analysis::BoundReport::Line::e_nb_limit)},
        {"regret_bound", line(r.cheater, r.tow, &analysis::BoundReport::Line::regret_bound)},
        {"regret_limit", line(r.cheater, r.tow, &analysis::BoundReport::Line::regret_limit)},
    };
}

void print_bound_report(const analysis::BoundReport& r, bool json_only, std::ostream& out) {
    nlohmann::json j = bound_report_json(r);
    if (json_only) {
        out << j.dump() << '\n';
        return;
    }
    out << std::setprecision(9);
    out << "mu_a          " << r.mu_a << '\n';
    out << "mu_b          " << r.mu_b << '\n';
    out << "horizon       " << r.horizon << '\n';
    out << "phi           " << r.phi << '\n';
    out << "phi_t         " << r.phi_t << '\n';
    out << '\n';
    out << std::left << std::setw(14) << "" << std::setw(16) << "cheater"
        << "tow" << '\n';
    auto row = [&](const char* name, double c, double t) {
        out << std::left << std::setw(14) << name << std::setw(16) << c << t << '\n';
    };
    row("e_nb_bound", r.cheater.e_nb_bound, r.tow.e_nb_bound);
    row("e_nb_limit", r.cheater.e_nb_limit, r.tow.e_nb_limit);
    row("regret_bound", r.cheater.regret_bound, r.tow.regret_bound);
    row("regret_limit", r.cheater.regret_limit, r.tow.regret_limit);
    out << '\n' << j.dump() << '\n';
}

void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << body;
    f.close();
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

// policy token applied on top of the shared base settings (omega/fluct
// carry over to tow entries)
harness::RunConfig config_for_policy(const harness::RunConfig& base, const std::string& token) {
    harness::RunConfig config = base;
    harness::PolicySpec spec = harness::parse_policy(token);
    spec.omega = base.policy.omega;
    spec.fluct = base.policy.fluct;
    config.policy = spec;
    return config;
}

int execute_compare(const Command& cmd, std::ostream& err) {
    std::string merged = "policy,step,mean_regret,se_regret,correct_rate,mean_nb\n";
    for (const auto& token : cmd.compare_algos) {
        harness::RunConfig config = config_for_policy(cmd.run, token);
        harness::AggregateMetrics metrics = harness::run_experiment(config);
        std::string csv = harness::metrics_to_csv(metrics);
        // prepend the policy name to each data row
        std::istringstream rows(csv);
        std::string row;
        std::getline(rows, row);  // drop the header
        while (std::getline(rows, row)) {
            merged += config.policy.name();
            merged += ',';
            merged += row;
            merged += '\n';
        }
        err << "compare: finished " << config.policy.name() << '\n';
    }
    write_text_file(cmd.out, merged);

    nlohmann::json j = nlohmann::json::parse(harness::config_to_json(cmd.run));
    j.erase("policy");
    nlohmann::json names = nlohmann::json::array();
    for (const auto& token : cmd.compare_algos) names.push_back(token);
    j["policies"] = names;
    write_text_file(cmd.out + ".json", j.dump(2) + "\n");
    err << "wrote " << cmd.out << '\n';
    return 0;
}

std::string format_grid_value(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

int execute_sweep(const Command& cmd, std::ostream& err) {
    std::string stem = cmd.out;
    if (stem.size() > 4 && stem.substr(stem.size() - 4) == ".csv") {
        stem = stem.substr(0, stem.size() - 4);
    }
    std::string summary = cmd.sweep_param +
                          ",final_step,final_mean_regret,final_se_regret,"
                          "final_correct_rate,final_mean_nb\n";
    for (double value : cmd.sweep_grid) {
        harness::RunConfig config = cmd.run;
        if (cmd.sweep_param == "omega") {
            if (config.policy.kind != harness::PolicySpec::Kind::Tow) {
                throw UsageError("sweep over omega needs --algo tow");
            }
            config.policy.omega = {harness::OmegaSetting::Kind::Fixed, value};
        } else if (cmd.sweep_param == "epsilon") {
            if (config.policy.kind != harness::PolicySpec::Kind::EpsilonGreedy) {
                throw UsageError("sweep over epsilon needs --algo egreedy:<e>");
            }
            if (!(value >= 0.0 && value <= 1.0)) {
                throw UsageError("epsilon grid values must lie in [0,1]");
            }
            config.policy.param1 = value;
        } else if (cmd.sweep_param == "tau") {
            if (config.policy.kind != harness::PolicySpec::Kind::Softmax) {
                throw UsageError("sweep over tau needs --algo softmax:<tau>");
            }
            if (!(value > 0.0)) throw UsageError("tau grid values must be positive");
            config.policy.param1 = value;
        } else {  // amplitude
            if (config.policy.kind != harness::PolicySpec::Kind::Tow) {
                throw UsageError("sweep over amplitude needs --algo tow");
            }
            if (value < 0.0) throw UsageError("amplitude grid values must be >= 0");
            config.policy.fluct.amplitude = value;
        }

        harness::AggregateMetrics metrics = harness::run_experiment(config);
        std::string path = stem + "_" + cmd.sweep_param + "_" + format_grid_value(value) + ".csv";
        harness::write_results(metrics, config, path);
        err << "sweep: " << cmd.sweep_param << " = " << value << " -> " << path << '\n';

        if (!metrics.steps.empty()) {
            std::size_t last = metrics.steps.size() - 1;
            char buf[160];
            std::snprintf(buf, sizeof buf, "%s,%llu,%.17g,%.17g,%.17g,%.17g\n",
                          format_grid_value(value).c_str(),
                          static_cast<unsigned long long>(metrics.steps[last]),
                          metrics.mean_regret[last], metrics.se_regret[last],
                          metrics.correct_rate[last], metrics.mean_nb[last]);
            summary += buf;
        }
    }
    std::string summary_path = stem + "_summary.csv";
    write_text_file(summary_path, summary);
    err << "wrote " << summary_path << '\n';
    return 0;
}

}  // namespace

int execute(const Command& cmd, std::ostream& out, std::ostream& err) {
    switch (cmd.kind) {
        case Command::Kind::Run: {
            harness::AggregateMetrics metrics = harness::run_experiment(cmd.run);
            harness::write_results(metrics, cmd.run, cmd.out);
            err << "wrote " << cmd.out << " and " << cmd.out << ".json\n";
            return 0;
        }
        case Command::Kind::Compare:
            return execute_compare(cmd, err);
        case Command::Kind::Sweep:
            return execute_sweep(cmd, err);
        case Command::Kind::Bound: {
            analysis::BoundReport report =
                analysis::make_bound_report(cmd.mu_a, cmd.mu_b, cmd.bound_horizon);
            print_bound_report(report, cmd.bound_json_only, out);
            return 0;
        }
    }
    return 1;
}

int run_main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    try {
        Command cmd = parse_args(args);
        return execute(cmd, std::cout, std::cerr);
    } catch (const HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace towbandit::cli
