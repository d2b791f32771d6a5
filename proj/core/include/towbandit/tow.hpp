#pragma once

#include <cstdint>
#include <vector>

#include "towbandit/env.hpp"
#include "towbandit/rng.hpp"

namespace towbandit::tow {

/// Fluctuation delta_k(t) added to the displacements at selection time.
enum class FluctKind { None, UniformNoise, GaussianNoise, Oscillation };

struct FluctuationConfig {
    FluctKind kind = FluctKind::None;
    double amplitude = 0.0;     // half-width (uniform), std dev (gaussian), peak (oscillation)
    std::uint64_t period = 100; // oscillation only
    // One draw per step applied with alternating sign (+ even machines,
    // - odd machines) instead of an independent draw per machine. For two
    // machines this is the single shared fluctuation acting on the bar.
    bool shared = false;
};

struct OmegaMode {
    enum class Kind { Fixed, OracleGamma, Adaptive };
    Kind kind = Kind::Fixed;
    double value = 1.0;  // omega itself (Fixed) or gamma (OracleGamma)

    static OmegaMode fixed(double omega);
    static OmegaMode oracle_gamma(double gamma);
    static OmegaMode adaptive();
};

// Per-machine estimates Q_k plus the weighting configuration. The estimates
// move like the terminals of a volume-conserving rigid body: a rewarded play
// adds +1 to the played machine's Q, a punished play subtracts omega.
struct TowState {
    std::vector<double> q;
    OmegaMode mode;
    FluctuationConfig fluct;
    std::uint64_t time = 0;

    TowState(std::size_t machines, OmegaMode mode, FluctuationConfig fluct = {});
};

/// Near-optimal weight omega_0 = gamma / (2 - gamma), gamma = P_A + P_B.
/// Domain (0, 2); gamma = 2 would mean both machines always pay.
double omega_zero(double gamma);

/// M-machine generalization: gamma' = P_(m) + P_(m+1), the top m-th plus
/// top (m+1)-th reward probabilities (m is 1-indexed, probs sorted
/// descending). Separates the top-m block from the rest.
double omega_zero_multi(const std::vector<double>& probs_sorted_desc, std::size_t m);

/// Weight in effect for the next update. Fixed and OracleGamma are direct;
/// Adaptive estimates gamma as the sum of the two largest empirical reward
/// rates (unplayed machines count as 0.5), clamped to [1e-6, 2 - 1e-6].
/// Adaptive mode is an extension: the analytic results assume gamma is known.
double resolve_omega(const TowState& state, const PlayHistory& history);

/// Displacements X_k = Q_k - mean_{j != k}(Q_j) + delta_k(t). For two
/// machines this is Q_A - Q_B + delta, and X_A = -X_B when delta = 0.
/// Noise kinds draw from `rng`; Oscillation is deterministic in state.time.
std::vector<double> displacements(const TowState& state, Rng& rng);

/// Machine whose displacement is largest; exact ties uniform at random.
std::size_t select(const TowState& state, Rng& rng);

/// Learning rule: Q_machine += 1 if rewarded, else Q_machine -= omega, with
/// omega resolved fresh from `history` (which should already include the
/// play being applied). Advances time by one step.
void update(TowState& state, const PlayHistory& history, std::size_t machine, bool reward);

}  // namespace towbandit::tow
