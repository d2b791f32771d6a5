#pragma once

#include <cstdint>
#include <vector>

#include "towbandit/rng.hpp"

namespace towbandit {

/// One step change of the reward probabilities: from time `t` on (inclusive)
/// the environment pays out according to `probs`.
struct SwitchEntry {
    std::uint64_t t = 0;
    std::vector<double> probs;
};

// Set of Bernoulli slot machines with hidden reward probabilities and an
// optional switching schedule. One instance serves exactly one trial; every
// trial gets its own instance and stream, so nothing is shared.
class BanditEnv {
public:
    BanditEnv(std::vector<double> probs, std::uint64_t rng_seed);
    BanditEnv(std::vector<double> probs, std::vector<SwitchEntry> switch_schedule,
              std::uint64_t rng_seed);

    std::size_t machines() const { return probs_.size(); }
    std::uint64_t seed() const { return seed_; }
    const std::vector<double>& base_probs() const { return probs_; }
    const std::vector<SwitchEntry>& switch_schedule() const { return schedule_; }

    /// Reward probabilities in effect at time t (all schedule entries with
    /// switch time <= t applied).
    const std::vector<double>& effective_probs(std::uint64_t t) const;

    /// Play one machine at time t >= 1. Draws exactly one value from the
    /// stream; true = reward.
    bool pull(std::size_t machine, std::uint64_t t);

    /// Total number of pulls so far (stream draws consumed by pull()).
    std::uint64_t pulls_made() const { return pulls_; }

private:
    std::vector<double> probs_;
    std::vector<SwitchEntry> schedule_;
    std::uint64_t seed_;
    Rng rng_;
    std::uint64_t pulls_ = 0;
};

// Per-machine play counters N_k and non-reward counters L_k. This pair is the
// sufficient statistic for every estimator in the toolkit.
struct PlayHistory {
    std::vector<std::uint64_t> plays;   // N_k
    std::vector<std::uint64_t> losses;  // L_k

    explicit PlayHistory(std::size_t machines)
        : plays(machines, 0), losses(machines, 0) {}

    std::size_t machines() const { return plays.size(); }

    /// N_machine += 1; L_machine += 1 iff not rewarded.
    void record(std::size_t machine, bool reward);

    std::uint64_t total_plays() const;

    /// Empirical reward rate (N_k - L_k) / N_k; 0.5 for a machine never
    /// played (uninformative prior).
    double empirical_mean(std::size_t machine) const;
};

}  // namespace towbandit
