#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "towbandit/env.hpp"
#include "towbandit/rng.hpp"

namespace towbandit::models {

// --- random-walk comparison model -------------------------------------------

/// Per-machine displacement R_k with right flight alpha on reward and left
/// flight beta on punishment, so R_k = alpha*N_k - (alpha+beta)*L_k.
struct RandomWalkState {
    std::vector<double> r;
    double alpha = 1.0;
    double beta = 1.0;

    RandomWalkState(std::size_t machines, double alpha, double beta);
};

void rw_step(RandomWalkState& state, std::size_t machine, bool reward);

/// E(R_k) after n plays: (alpha*p - beta*(1-p)) * n.
double rw_expected(double alpha, double beta, double p, std::uint64_t n);

/// True iff p_b < beta/(alpha+beta) < p_a (strict): the walk drifts right for
/// the better machine and left for the worse one.
bool separation_ok(double alpha, double beta, double p_a, double p_b);

/// beta/alpha implied by placing the threshold at the midpoint
/// beta/(alpha+beta) = (P_A+P_B)/2; equals tow::omega_zero(gamma) exactly.
double alpha_beta_ratio_from_gamma(double gamma);

// --- cheater algorithm -------------------------------------------------------

// Imaginary policy that pulls both machines every step but declares only one
// play. Defined for two machines. With omega > 0 the sums become the
// TOW-analysis form S_k = (sum of rewards) - omega * L_k.
struct CheaterState {
    std::vector<double> s{0.0, 0.0};
    double omega = 0.0;
};

/// Machine the cheater declares given the current sums: argmax S_k, uniform
/// random on an exact tie.
std::size_t cheater_declared(const CheaterState& state, Rng& rng);

/// Pulls BOTH machines once at time t (exactly two stream draws), adds the
/// outcomes to the sums, and returns the machine declared for step t+1.
std::size_t cheater_step(CheaterState& state, BanditEnv& env, std::uint64_t t, Rng& rng);

// --- simultaneous-update estimates -------------------------------------------

/// (Q'_A, Q'_B): expected rewards when both estimates are updated each step
/// using the known sum gamma = P_A + P_B.
std::pair<double, double> q_prime(const PlayHistory& history, double gamma);

/// Q_A - Q_B = (N_A - N_B) - (1 + omega)(L_A - L_B), the quantity TOW
/// dynamics actually uses.
double q_diff(const PlayHistory& history, double omega);

/// Q''_A - Q''_B = (N_A - N_B) - (2/(2-gamma))(L_A - L_B), where
/// Q''_k = Q'_k / (2 - gamma). Equals q_diff at omega = omega_zero(gamma).
double q_double_prime_diff(const PlayHistory& history, double gamma);

// --- standard baselines -------------------------------------------------------

// Textbook forms; empirical mean of an unplayed machine is 0.5, UCB variants
// first play every machine once in round-robin order.
struct Baseline {
    enum class Kind { EpsilonGreedy, Softmax, Ucb1, Ucb1Tuned, Random };
    Kind kind = Kind::Random;
    double param = 0.0;  // epsilon or tau

    static Baseline epsilon_greedy(double epsilon);
    static Baseline softmax(double tau);
    static Baseline ucb1() { return {Kind::Ucb1, 0.0}; }
    static Baseline ucb1_tuned() { return {Kind::Ucb1Tuned, 0.0}; }
    static Baseline random() { return {Kind::Random, 0.0}; }
};

std::size_t baseline_select(const Baseline& policy, const PlayHistory& history, Rng& rng);

}  // namespace towbandit::models
