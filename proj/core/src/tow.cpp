#include "towbandit/tow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace towbandit::tow {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kGammaClamp = 1e-6;
}  // namespace

OmegaMode OmegaMode::fixed(double omega) {
    if (omega < 0.0) {
        throw std::invalid_argument("fixed omega must be >= 0");
    }
    return OmegaMode{Kind::Fixed, omega};
}

OmegaMode OmegaMode::oracle_gamma(double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0)) {
        throw std::invalid_argument("gamma must lie in (0, 2)");
    }
    return OmegaMode{Kind::OracleGamma, gamma};
}

OmegaMode OmegaMode::adaptive() { return OmegaMode{Kind::Adaptive, 0.0}; }

TowState::TowState(std::size_t machines, OmegaMode mode_in, FluctuationConfig fluct_in)
    : q(machines, 0.0), mode(mode_in), fluct(fluct_in) {
    if (machines < 2) {
        throw std::invalid_argument("TOW needs at least 2 machines");
    }
    if (fluct.amplitude < 0.0) {
        throw std::invalid_argument("fluctuation amplitude must be >= 0");
    }
    if (fluct.kind == FluctKind::Oscillation && fluct.period == 0) {
        throw std::invalid_argument("oscillation period must be positive");
    }
}

double omega_zero(double gamma) {
    if (!(gamma > 0.0 && gamma < 2.0)) {
        throw std::domain_error("omega_zero: gamma must lie in (0, 2), got " +
                                std::to_string(gamma));
    }
    return gamma / (2.0 - gamma);
}

double omega_zero_multi(const std::vector<double>& probs_sorted_desc, std::size_t m) {
    if (m < 1 || m >= probs_sorted_desc.size()) {
        throw std::out_of_range("omega_zero_multi: m must satisfy 1 <= m < machine count");
    }
    if (!std::is_sorted(probs_sorted_desc.begin(), probs_sorted_desc.end(),
                        std::greater<double>())) {
        throw std::invalid_argument("omega_zero_multi: probabilities must be sorted descending");
    }
    return omega_zero(probs_sorted_desc[m - 1] + probs_sorted_desc[m]);
}

double resolve_omega(const TowState& state, const PlayHistory& history) {
    switch (state.mode.kind) {
        case OmegaMode::Kind::Fixed:
            return state.mode.value;
        case OmegaMode::Kind::OracleGamma:
            return omega_zero(state.mode.value);
        case OmegaMode::Kind::Adaptive: {
            double top1 = 0.0, top2 = 0.0;
            for (std::size_t k = 0; k < history.machines(); ++k) {
                double rate = history.empirical_mean(k);
                if (rate > top1) {
                    top2 = top1;
                    top1 = rate;
                } else if (rate > top2) {
                    top2 = rate;
                }
            }
            double gamma_hat =
                std::clamp(top1 + top2, kGammaClamp, 2.0 - kGammaClamp);
            return omega_zero(gamma_hat);
        }
    }
    throw std::logic_error("unreachable omega mode");
}

namespace {

// delta_k(t) per the fluctuation config. Noise is independent per machine
// unless `shared`; shared and oscillation apply one value with alternating
// sign so that it cancels across machine pairs.
std::vector<double> draw_fluctuation(const FluctuationConfig& f, std::size_t machines,
                                     std::uint64_t t, Rng& rng) {
    std::vector<double> delta(machines, 0.0);
    auto alternating = [&](double value) {
        for (std::size_t k = 0; k < machines; ++k) {
            delta[k] = (k % 2 == 0) ? value : -value;
        }
    };
    switch (f.kind) {
        case FluctKind::None:
            break;
        case FluctKind::UniformNoise:
            if (f.shared) {
                alternating(rng.uniform(-f.amplitude, f.amplitude));
            } else {
                for (auto& d : delta) d = rng.uniform(-f.amplitude, f.amplitude);
            }
            break;
        case FluctKind::GaussianNoise:
            if (f.shared) {
                alternating(f.amplitude * rng.gaussian());
            } else {
                for (auto& d : delta) d = f.amplitude * rng.gaussian();
            }
            break;
        case FluctKind::Oscillation:
            alternating(f.amplitude *
                        std::cos(kTwoPi * static_cast<double>(t) /
                                 static_cast<double>(f.period)));
            break;
    }
    return delta;
}

}  // namespace

std::vector<double> displacements(const TowState& state, Rng& rng) {
    const std::size_t m = state.q.size();
    std::vector<double> x =
        draw_fluctuation(state.fluct, m, state.time, rng);
    if (m == 2) {
        // X_A = Q_A - Q_B, X_B = -X_A: conservation holds exactly.
        double d = state.q[0] - state.q[1];
        x[0] += d;
        x[1] += -d;
        return x;
    }
    double sum = 0.0;
    for (double q : state.q) sum += q;
    for (std::size_t k = 0; k < m; ++k) {
        // mean of the other machines' estimates; sum X_k = 0 at delta = 0
        double mean_rest = (sum - state.q[k]) / static_cast<double>(m - 1);
        x[k] += state.q[k] - mean_rest;
    }
    return x;
}

std::size_t select(const TowState& state, Rng& rng) {
    std::vector<double> x = displacements(state, rng);
    return argmax_random_tie(x, rng);
}

void update(TowState& state, const PlayHistory& history, std::size_t machine, bool reward) {
    if (machine >= state.q.size()) {
        throw std::out_of_range("machine index out of range");
    }
    if (reward) {
        state.q[machine] += 1.0;
    } else {
        state.q[machine] -= resolve_omega(state, history);
    }
    ++state.time;
}

}  // namespace towbandit::tow
