#include "towbandit/env.hpp"

#include <stdexcept>
#include <string>

namespace towbandit {

namespace {

void check_probs(const std::vector<double>& probs) {
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("reward probability outside [0,1]: " +
                                        std::to_string(p));
        }
    }
}

}  // namespace

BanditEnv::BanditEnv(std::vector<double> probs, std::uint64_t rng_seed)
    : BanditEnv(std::move(probs), {}, rng_seed) {}

BanditEnv::BanditEnv(std::vector<double> probs, std::vector<SwitchEntry> switch_schedule,
                     std::uint64_t rng_seed)
    : probs_(std::move(probs)),
      schedule_(std::move(switch_schedule)),
      seed_(rng_seed),
      rng_(rng_seed) {
    if (probs_.size() < 2) {
        throw std::invalid_argument("environment needs at least 2 machines");
    }
    check_probs(probs_);
    std::uint64_t prev_t = 0;
    bool first = true;
    for (const auto& entry : schedule_) {
        if (!first && entry.t <= prev_t) {
            throw std::invalid_argument("switch schedule times must strictly increase");
        }
        if (entry.probs.size() != probs_.size()) {
            throw std::invalid_argument("switch entry has wrong machine count");
        }
        check_probs(entry.probs);
        prev_t = entry.t;
        first = false;
    }
}

const std::vector<double>& BanditEnv::effective_probs(std::uint64_t t) const {
    const std::vector<double>* effective = &probs_;
    for (const auto& entry : schedule_) {
        if (entry.t > t) break;
        effective = &entry.probs;
    }
    return *effective;
}

bool BanditEnv::pull(std::size_t machine, std::uint64_t t) {
    if (machine >= probs_.size()) {
        throw std::out_of_range("machine index " + std::to_string(machine) +
                                " out of range");
    }
    if (t < 1) {
        throw std::invalid_argument("time steps start at 1");
    }
    ++pulls_;
    return rng_.bernoulli(effective_probs(t)[machine]);
}

void PlayHistory::record(std::size_t machine, bool reward) {
    if (machine >= plays.size()) {
        throw std::out_of_range("machine index " + std::to_string(machine) +
                                " out of range");
    }
    ++plays[machine];
    if (!reward) ++losses[machine];
}

std::uint64_t PlayHistory::total_plays() const {
    std::uint64_t n = 0;
    for (auto v : plays) n += v;
    return n;
}

double PlayHistory::empirical_mean(std::size_t machine) const {
    if (machine >= plays.size()) {
        throw std::out_of_range("machine index " + std::to_string(machine) +
                                " out of range");
    }
    if (plays[machine] == 0) return 0.5;
    return static_cast<double>(plays[machine] - losses[machine]) /
           static_cast<double>(plays[machine]);
}

}  // namespace towbandit
