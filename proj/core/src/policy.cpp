#include "towbandit/policy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace towbandit::harness {

namespace {

class TowPolicy : public Policy {
public:
    TowPolicy(std::size_t machines, tow::OmegaMode mode, tow::FluctuationConfig fluct)
        : state_(machines, mode, fluct), history_(machines) {}

    StepOutcome step(BanditEnv& env, std::uint64_t t, Rng& rng) override {
        std::size_t k = tow::select(state_, rng);
        bool reward = env.pull(k, t);
        history_.record(k, reward);
        tow::update(state_, history_, k, reward);
        return {k, reward};
    }

private:
    tow::TowState state_;
    PlayHistory history_;
};

class CheaterPolicy : public Policy {
public:
    StepOutcome step(BanditEnv& env, std::uint64_t t, Rng& rng) override {
        // declaration uses the sums accumulated through step t-1
        std::size_t declared = models::cheater_declared(state_, rng);
        double before = state_.s[declared];
        models::cheater_step(state_, env, t, rng);
        bool reward = state_.s[declared] > before;
        return {declared, reward};
    }

private:
    models::CheaterState state_;
};

class BaselinePolicy : public Policy {
public:
    BaselinePolicy(models::Baseline baseline, std::size_t machines)
        : baseline_(baseline), history_(machines) {}

    StepOutcome step(BanditEnv& env, std::uint64_t t, Rng& rng) override {
        std::size_t k = models::baseline_select(baseline_, history_, rng);
        bool reward = env.pull(k, t);
        history_.record(k, reward);
        return {k, reward};
    }

private:
    models::Baseline baseline_;
    PlayHistory history_;
};

class RandomWalkPolicy : public Policy {
public:
    RandomWalkPolicy(std::size_t machines, double alpha, double beta)
        : state_(machines, alpha, beta) {}

    StepOutcome step(BanditEnv& env, std::uint64_t t, Rng& rng) override {
        std::size_t k = argmax_random_tie(state_.r, rng);
        bool reward = env.pull(k, t);
        models::rw_step(state_, k, reward);
        return {k, reward};
    }

private:
    models::RandomWalkState state_;
};

double parse_number(const std::string& text, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(text, &pos);
        if (pos != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("malformed " + what + ": '" + text + "'");
    }
}

std::string format_number(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

std::string PolicySpec::name() const {
    switch (kind) {
        case Kind::Tow: return "tow";
        case Kind::Cheater: return "cheater";
        case Kind::EpsilonGreedy: return "egreedy:" + format_number(param1);
        case Kind::Softmax: return "softmax:" + format_number(param1);
        case Kind::Ucb1: return "ucb1";
        case Kind::Ucb1Tuned: return "ucb1tuned";
        case Kind::Random: return "random";
        case Kind::RandomWalk:
            return "randomwalk:" + format_number(param1) + "," + format_number(param2);
    }
    return "?";
}

PolicySpec parse_policy(const std::string& token) {
    PolicySpec spec;
    std::string head = token;
    std::string arg;
    if (auto colon = token.find(':'); colon != std::string::npos) {
        head = token.substr(0, colon);
        arg = token.substr(colon + 1);
    }
    auto require_arg = [&](const char* what) {
        if (arg.empty()) throw ConfigError(std::string("policy '") + head + "' needs " + what);
    };
    if (head == "tow") {
        spec.kind = PolicySpec::Kind::Tow;
    } else if (head == "cheater") {
        spec.kind = PolicySpec::Kind::Cheater;
    } else if (head == "egreedy") {
        spec.kind = PolicySpec::Kind::EpsilonGreedy;
        require_arg("an epsilon, e.g. egreedy:0.1");
        spec.param1 = parse_number(arg, "epsilon");
        if (!(spec.param1 >= 0.0 && spec.param1 <= 1.0)) {
            throw ConfigError("epsilon must lie in [0,1]");
        }
    } else if (head == "softmax") {
        spec.kind = PolicySpec::Kind::Softmax;
        require_arg("a temperature, e.g. softmax:0.1");
        spec.param1 = parse_number(arg, "tau");
        if (!(spec.param1 > 0.0)) throw ConfigError("tau must be positive");
    } else if (head == "ucb1") {
        spec.kind = PolicySpec::Kind::Ucb1;
    } else if (head == "ucb1tuned") {
        spec.kind = PolicySpec::Kind::Ucb1Tuned;
    } else if (head == "random") {
        spec.kind = PolicySpec::Kind::Random;
    } else if (head == "randomwalk") {
        spec.kind = PolicySpec::Kind::RandomWalk;
        require_arg("flights, e.g. randomwalk:1,1");
        auto comma = arg.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("randomwalk needs two flights: randomwalk:<alpha>,<beta>");
        }
        spec.param1 = parse_number(arg.substr(0, comma), "alpha");
        spec.param2 = parse_number(arg.substr(comma + 1), "beta");
        if (!(spec.param1 > 0.0 && spec.param2 > 0.0)) {
            throw ConfigError("random walk flights must be positive");
        }
    } else {
        throw ConfigError("unknown policy '" + token + "'");
    }
    return spec;
}

std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const std::vector<double>& probs) {
    const std::size_t m = probs.size();
    if (m < 2) throw ConfigError("need at least 2 machines");
    switch (spec.kind) {
        case PolicySpec::Kind::Tow: {
            tow::OmegaMode mode;
            switch (spec.omega.kind) {
                case OmegaSetting::Kind::Fixed:
                    mode = tow::OmegaMode::fixed(spec.omega.value);
                    break;
                case OmegaSetting::Kind::Adaptive:
                    mode = tow::OmegaMode::adaptive();
                    break;
                case OmegaSetting::Kind::Auto: {
                    // omega_0 from the true top-two probabilities
                    std::vector<double> sorted = probs;
                    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
                    double gamma = sorted[0] + sorted[1];
                    if (!(gamma > 0.0 && gamma < 2.0)) {
                        throw ConfigError("omega auto needs top-two probability sum in (0,2)");
                    }
                    mode = tow::OmegaMode::oracle_gamma(gamma);
                    break;
                }
            }
            return std::make_unique<TowPolicy>(m, mode, spec.fluct);
        }
        case PolicySpec::Kind::Cheater:
            if (m != 2) throw ConfigError("cheater is defined for exactly 2 machines");
            return std::make_unique<CheaterPolicy>();
        case PolicySpec::Kind::EpsilonGreedy:
            return std::make_unique<BaselinePolicy>(
                models::Baseline::epsilon_greedy(spec.param1), m);
        case PolicySpec::Kind::Softmax:
            return std::make_unique<BaselinePolicy>(models::Baseline::softmax(spec.param1), m);
        case PolicySpec::Kind::Ucb1:
            return std::make_unique<BaselinePolicy>(models::Baseline::ucb1(), m);
        case PolicySpec::Kind::Ucb1Tuned:
            return std::make_unique<BaselinePolicy>(models::Baseline::ucb1_tuned(), m);
        case PolicySpec::Kind::Random:
            return std::make_unique<BaselinePolicy>(models::Baseline::random(), m);
        case PolicySpec::Kind::RandomWalk:
            return std::make_unique<RandomWalkPolicy>(m, spec.param1, spec.param2);
    }
    throw ConfigError("unknown policy kind");
}

}  // namespace towbandit::harness
