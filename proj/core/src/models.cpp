#include "towbandit/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "towbandit/tow.hpp"

namespace towbandit::models {

RandomWalkState::RandomWalkState(std::size_t machines, double alpha_in, double beta_in)
    : r(machines, 0.0), alpha(alpha_in), beta(beta_in) {
    if (!(alpha > 0.0) || !(beta > 0.0)) {
        throw std::invalid_argument("random walk flights must be positive");
    }
}

void rw_step(RandomWalkState& state, std::size_t machine, bool reward) {
    if (machine >= state.r.size()) {
        throw std::out_of_range("machine index out of range");
    }
    state.r[machine] += reward ? state.alpha : -state.beta;
}

double rw_expected(double alpha, double beta, double p, std::uint64_t n) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0,1]");
    }
    return (alpha * p - beta * (1.0 - p)) * static_cast<double>(n);
}

bool separation_ok(double alpha, double beta, double p_a, double p_b) {
    if (!(p_a > p_b)) {
        throw std::invalid_argument("separation_ok requires p_a > p_b");
    }
    double threshold = beta / (alpha + beta);
    return p_b < threshold && threshold < p_a;
}

double alpha_beta_ratio_from_gamma(double gamma) {
    // beta/(alpha+beta) = gamma/2 together with R_k/alpha = Q_k gives
    // beta/alpha = gamma/(2-gamma); identical to the TOW weight.
    return tow::omega_zero(gamma);
}

std::size_t cheater_declared(const CheaterState& state, Rng& rng) {
    return argmax_random_tie(state.s, rng);
}

std::size_t cheater_step(CheaterState& state, BanditEnv& env, std::uint64_t t, Rng& rng) {
    if (env.machines() != 2 || state.s.size() != 2) {
        throw std::invalid_argument("cheater algorithm is defined for exactly 2 machines");
    }
    for (std::size_t k = 0; k < 2; ++k) {
        bool rewarded = env.pull(k, t);
        state.s[k] += rewarded ? 1.0 : -state.omega;
    }
    return cheater_declared(state, rng);
}

namespace {

void require_two_machines(const PlayHistory& h) {
    if (h.machines() != 2) {
        throw std::invalid_argument("estimate is defined for exactly 2 machines");
    }
}

}  // namespace

std::pair<double, double> q_prime(const PlayHistory& history, double gamma) {
    require_two_machines(history);
    auto n_a = static_cast<double>(history.plays[0]);
    auto n_b = static_cast<double>(history.plays[1]);
    auto l_a = static_cast<double>(history.losses[0]);
    auto l_b = static_cast<double>(history.losses[1]);
    double qa = n_a - l_a + (gamma - 1.0) * n_b + l_b;
    double qb = n_b - l_b + (gamma - 1.0) * n_a + l_a;
    return {qa, qb};
}

double q_diff(const PlayHistory& history, double omega) {
    require_two_machines(history);
    double dn = static_cast<double>(history.plays[0]) - static_cast<double>(history.plays[1]);
    double dl = static_cast<double>(history.losses[0]) - static_cast<double>(history.losses[1]);
    return dn - (1.0 + omega) * dl;
}

double q_double_prime_diff(const PlayHistory& history, double gamma) {
    require_two_machines(history);
    if (gamma == 2.0) {
        throw std::domain_error("gamma = 2 is degenerate");
    }
    double dn = static_cast<double>(history.plays[0]) - static_cast<double>(history.plays[1]);
    double dl = static_cast<double>(history.losses[0]) - static_cast<double>(history.losses[1]);
    return dn - (2.0 / (2.0 - gamma)) * dl;
}

Baseline Baseline::epsilon_greedy(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::invalid_argument("epsilon must lie in [0,1]");
    }
    return {Kind::EpsilonGreedy, epsilon};
}

Baseline Baseline::softmax(double tau) {
    if (!(tau > 0.0)) {
        throw std::invalid_argument("softmax temperature must be positive");
    }
    return {Kind::Softmax, tau};
}

namespace {

std::size_t softmax_select(const PlayHistory& h, double tau, Rng& rng) {
    const std::size_t m = h.machines();
    std::vector<double> w(m);
    double max_mean = h.empirical_mean(0);
    for (std::size_t k = 1; k < m; ++k) {
        max_mean = std::max(max_mean, h.empirical_mean(k));
    }
    double total = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        w[k] = std::exp((h.empirical_mean(k) - max_mean) / tau);
        total += w[k];
    }
    double u = rng.next_unit() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        acc += w[k];
        if (u < acc) return k;
    }
    return m - 1;
}

std::size_t ucb_select(const PlayHistory& h, bool tuned, Rng& rng) {
    const std::size_t m = h.machines();
    // cold start: round-robin until every machine has been played once
    for (std::size_t k = 0; k < m; ++k) {
        if (h.plays[k] == 0) return k;
    }
    double n = static_cast<double>(h.total_plays());
    std::vector<double> index(m);
    for (std::size_t k = 0; k < m; ++k) {
        double mean = h.empirical_mean(k);
        double nk = static_cast<double>(h.plays[k]);
        if (tuned) {
            // Bernoulli rewards: sample variance reduces to mean*(1-mean)
            double vk = mean * (1.0 - mean) + std::sqrt(2.0 * std::log(n) / nk);
            index[k] = mean + std::sqrt(std::log(n) / nk * std::min(0.25, vk));
        } else {
            index[k] = mean + std::sqrt(2.0 * std::log(n) / nk);
        }
    }
    return argmax_random_tie(index, rng);
}

}  // namespace

std::size_t baseline_select(const Baseline& policy, const PlayHistory& history, Rng& rng) {
    const std::size_t m = history.machines();
    switch (policy.kind) {
        case Baseline::Kind::Random:
            return rng.below(m);
        case Baseline::Kind::EpsilonGreedy: {
            if (rng.next_unit() < policy.param) return rng.below(m);
            std::vector<double> means(m);
            for (std::size_t k = 0; k < m; ++k) means[k] = history.empirical_mean(k);
            return argmax_random_tie(means, rng);
        }
        case Baseline::Kind::Softmax:
            return softmax_select(history, policy.param, rng);
        case Baseline::Kind::Ucb1:
            return ucb_select(history, false, rng);
        case Baseline::Kind::Ucb1Tuned:
            return ucb_select(history, true, rng);
    }
    throw std::logic_error("unreachable baseline kind");
}

}  // namespace towbandit::models
