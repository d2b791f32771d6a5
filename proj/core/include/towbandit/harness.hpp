#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "towbandit/env.hpp"
#include "towbandit/policy.hpp"

namespace towbandit::harness {

struct RunConfig {
    std::vector<double> probs;
    std::vector<SwitchEntry> switch_schedule;
    PolicySpec policy;
    std::uint64_t horizon = 1000;
    std::uint64_t trials = 1;
    std::uint64_t base_seed = 0;
    std::uint64_t record_stride = 10;

    void validate() const;  // throws ConfigError
};

/// Full per-step log of one trial. cum_regret uses the true probabilities in
/// effect at each step (pseudo-regret), so it is non-decreasing.
struct TrialRecord {
    std::vector<std::uint32_t> chosen;
    std::vector<std::uint8_t> rewards;
    std::vector<double> cum_regret;
};

/// Curves aggregated over trials at steps stride, 2*stride, ... <= horizon.
/// correct_rate is the fraction of trials whose choice AT that step is a
/// true best machine; mean_nb is the mean count of sub-optimal plays UP TO
/// that step.
struct AggregateMetrics {
    std::vector<std::uint64_t> steps;
    std::vector<double> mean_regret;
    std::vector<double> se_regret;
    std::vector<double> correct_rate;
    std::vector<double> mean_nb;
};

/// Seeds: trial -> mix_seed(base_seed, trial_index); the environment and the
/// policy get sub-streams mix_seed(trial_seed, 0) and mix_seed(trial_seed, 1).
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t trial_index);

/// Runs one trial; deterministic given (config, trial_index).
TrialRecord run_trial(const RunConfig& config, std::uint64_t trial_index);

/// Runs config.trials independent trials, possibly in parallel (capped by
/// the TOW_BANDIT_THREADS environment variable; 0 or unset = auto). The
/// aggregation is performed in trial order, so results do not depend on the
/// degree of parallelism.
AggregateMetrics run_experiment(const RunConfig& config);

/// Writes `step,mean_regret,se_regret,correct_rate,mean_nb` rows plus a
/// sidecar JSON (<path>.json) holding the full RunConfig for re-runs.
void write_results(const AggregateMetrics& metrics, const RunConfig& config,
                   const std::string& path);

/// CSV body for the metrics (header + rows); exposed for the merged formats.
std::string metrics_to_csv(const AggregateMetrics& metrics);

/// RunConfig as a JSON string (the sidecar body).
std::string config_to_json(const RunConfig& config);

/// Number of worker threads run_experiment will use for a given trial count.
unsigned effective_threads(std::uint64_t trials);

}  // namespace towbandit::harness
