#include "towbandit/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace towbandit::harness {

void RunConfig::validate() const {
    if (probs.size() < 2) throw ConfigError("need at least 2 machines");
    if (horizon < 1) throw ConfigError("horizon must be >= 1");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (record_stride < 1) throw ConfigError("record_stride must be >= 1");
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index) {
    return mix_seed(base_seed, trial_index);
}

TrialRecord run_trial(const RunConfig& config, std::uint64_t trial_index) {
    config.validate();
    std::uint64_t ts = trial_seed(config.base_seed, trial_index);
    BanditEnv env(config.probs, config.switch_schedule, mix_seed(ts, 0));
    Rng policy_rng(mix_seed(ts, 1));
    auto policy = make_policy(config.policy, config.probs);

    TrialRecord rec;
    rec.chosen.reserve(config.horizon);
    rec.rewards.reserve(config.horizon);
    rec.cum_regret.reserve(config.horizon);

    double regret = 0.0;
    for (std::uint64_t t = 1; t <= config.horizon; ++t) {
        const auto& eff = env.effective_probs(t);
        StepOutcome out = policy->step(env, t, policy_rng);
        double best = *std::max_element(eff.begin(), eff.end());
        regret += best - eff[out.chosen];
        rec.chosen.push_back(static_cast<std::uint32_t>(out.chosen));
        rec.rewards.push_back(out.reward ? 1 : 0);
        rec.cum_regret.push_back(regret);
    }
    return rec;
}

unsigned effective_threads(std::uint64_t trials) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    unsigned n = hw;
    if (const char* env = std::getenv("TOW_BANDIT_THREADS")) {
        char* end = nullptr;
        unsigned long cap = std::strtoul(env, &end, 10);
        // 0 (or anything unparsable) means auto
        if (end != env && *end == '\0' && cap > 0) {
            n = static_cast<unsigned>(std::min<unsigned long>(cap, n));
        }
    }
    return static_cast<unsigned>(std::min<std::uint64_t>(n, trials));
}

namespace {

// Compact per-trial samples at the recorded steps only; the reduction walks
// them in trial order so the aggregate is independent of scheduling.
struct StepSample {
    double regret = 0.0;
    std::uint32_t nb = 0;
    std::uint8_t correct = 0;
};

std::vector<std::uint64_t> recorded_steps(const RunConfig& config) {
    std::vector<std::uint64_t> steps;
    for (std::uint64_t s = config.record_stride; s <= config.horizon;
         s += config.record_stride) {
        steps.push_back(s);
    }
    return steps;
}

}  // namespace

AggregateMetrics run_experiment(const RunConfig& config) {
    config.validate();
    // surface policy/arity errors before any worker starts
    (void)make_policy(config.policy, config.probs);

    const std::vector<std::uint64_t> steps = recorded_steps(config);
    const std::size_t n_rec = steps.size();
    const std::uint64_t trials = config.trials;

    // best machines per step change only at switch points; evaluate lazily
    BanditEnv probe(config.probs, config.switch_schedule, 0);
    auto is_best = [&probe](std::uint64_t t, std::uint32_t k) {
        const auto& eff = probe.effective_probs(t);
        return eff[k] == *std::max_element(eff.begin(), eff.end());
    };

    std::vector<StepSample> samples(trials * n_rec);
    auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            TrialRecord rec = run_trial(config, i);
            std::uint32_t nb = 0;
            std::size_t next = 0;
            for (std::uint64_t t = 1; t <= config.horizon && next < n_rec; ++t) {
                bool best = is_best(t, rec.chosen[t - 1]);
                if (!best) ++nb;
                if (t == steps[next]) {
                    StepSample& s = samples[i * n_rec + next];
                    s.regret = rec.cum_regret[t - 1];
                    s.nb = nb;
                    s.correct = best ? 1 : 0;
                    ++next;
                }
            }
        }
    };

    unsigned n_threads = effective_threads(trials);
    if (n_threads <= 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> pool;
        std::uint64_t chunk = (trials + n_threads - 1) / n_threads;
        for (unsigned w = 0; w < n_threads; ++w) {
            std::uint64_t begin = w * chunk;
            std::uint64_t end = std::min<std::uint64_t>(begin + chunk, trials);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    AggregateMetrics agg;
    agg.steps = steps;
    agg.mean_regret.resize(n_rec);
    agg.se_regret.resize(n_rec);
    agg.correct_rate.resize(n_rec);
    agg.mean_nb.resize(n_rec);
    for (std::size_t j = 0; j < n_rec; ++j) {
        double sum = 0.0, sum_sq = 0.0, nb_sum = 0.0;
        std::uint64_t correct = 0;
        for (std::uint64_t i = 0; i < trials; ++i) {
            const StepSample& s = samples[i * n_rec + j];
            sum += s.regret;
            sum_sq += s.regret * s.regret;
            nb_sum += static_cast<double>(s.nb);
            correct += s.correct;
        }
        double n = static_cast<double>(trials);
        double mean = sum / n;
        agg.mean_regret[j] = mean;
        if (trials > 1) {
            double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
            agg.se_regret[j] = std::sqrt(var / n);
        } else {
            agg.se_regret[j] = 0.0;
        }
        agg.correct_rate[j] = static_cast<double>(correct) / n;
        agg.mean_nb[j] = nb_sum / n;
    }
    return agg;
}

namespace {

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string metrics_to_csv(const AggregateMetrics& metrics) {
    std::string out = "step,mean_regret,se_regret,correct_rate,mean_nb\n";
    for (std::size_t j = 0; j < metrics.steps.size(); ++j) {
        out += std::to_string(metrics.steps[j]);
        out += ',';
        out += format_double(metrics.mean_regret[j]);
        out += ',';
        out += format_double(metrics.se_regret[j]);
        out += ',';
        out += format_double(metrics.correct_rate[j]);
        out += ',';
        out += format_double(metrics.mean_nb[j]);
        out += '\n';
    }
    return out;
}

std::string config_to_json(const RunConfig& config) {
    nlohmann::json j;
    j["probs"] = config.probs;
    if (!config.switch_schedule.empty()) {
        nlohmann::json sched = nlohmann::json::array();
        for (const auto& entry : config.switch_schedule) {
            sched.push_back({{"t", entry.t}, {"probs", entry.probs}});
        }
        j["switch_schedule"] = sched;
    }
    nlohmann::json pol;
    pol["name"] = config.policy.name();
    if (config.policy.kind == PolicySpec::Kind::Tow) {
        switch (config.policy.omega.kind) {
            case OmegaSetting::Kind::Auto: pol["omega"] = "auto"; break;
            case OmegaSetting::Kind::Adaptive: pol["omega"] = "adaptive"; break;
            case OmegaSetting::Kind::Fixed: pol["omega"] = config.policy.omega.value; break;
        }
        const auto& f = config.policy.fluct;
        const char* kind = "none";
        switch (f.kind) {
            case tow::FluctKind::None: kind = "none"; break;
            case tow::FluctKind::UniformNoise: kind = "uniform"; break;
            case tow::FluctKind::GaussianNoise: kind = "gaussian"; break;
            case tow::FluctKind::Oscillation: kind = "oscillation"; break;
        }
        pol["fluct"] = {{"kind", kind},
                        {"amplitude", f.amplitude},
                        {"period", f.period},
                        {"shared", f.shared}};
    }
    j["policy"] = pol;
    j["horizon"] = config.horizon;
    j["trials"] = config.trials;
    j["base_seed"] = config.base_seed;
    j["record_stride"] = config.record_stride;
    return j.dump(2);
}

void write_results(const AggregateMetrics& metrics, const RunConfig& config,
                   const std::string& path) {
    std::ofstream csv(path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot open '" + path + "' for writing");
    csv << metrics_to_csv(metrics);
    csv.close();
    if (!csv) throw std::runtime_error("failed writing '" + path + "'");

    std::string sidecar = path + ".json";
    std::ofstream js(sidecar, std::ios::binary);
    if (!js) throw std::runtime_error("cannot open '" + sidecar + "' for writing");
    js << config_to_json(config) << '\n';
    js.close();
    if (!js) throw std::runtime_error("failed writing '" + sidecar + "'");
}

}  // namespace towbandit::harness
