#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "towbandit/env.hpp"
#include "towbandit/models.hpp"
#include "towbandit/rng.hpp"
#include "towbandit/tow.hpp"

namespace towbandit::harness {

/// Raised for invalid policy/environment combinations or bad parameters.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepOutcome {
    std::size_t chosen = 0;  // the (declared) machine for this step
    bool reward = false;     // its observed outcome
};

// One decision step against the environment: choose a machine, interact,
// learn. The cheater pulls both machines but still declares exactly one.
class Policy {
public:
    virtual ~Policy() = default;
    virtual StepOutcome step(BanditEnv& env, std::uint64_t t, Rng& rng) = 0;
};

/// How the TOW weight is chosen on the command line / in config files:
/// "auto" = omega_0 from the true top-two probabilities, "adaptive" =
/// estimate gamma on the fly, a number = fixed omega.
struct OmegaSetting {
    enum class Kind { Auto, Adaptive, Fixed };
    Kind kind = Kind::Auto;
    double value = 1.0;
};

struct PolicySpec {
    enum class Kind {
        Tow,
        Cheater,
        EpsilonGreedy,
        Softmax,
        Ucb1,
        Ucb1Tuned,
        Random,
        RandomWalk
    };
    Kind kind = Kind::Tow;
    double param1 = 0.0;  // epsilon | tau | alpha
    double param2 = 0.0;  // beta (random walk)
    OmegaSetting omega;
    tow::FluctuationConfig fluct;

    /// Canonical policy name, e.g. "tow", "egreedy:0.1", "randomwalk:1,2".
    std::string name() const;
};

/// Parses a policy token: tow | cheater | egreedy:<e> | softmax:<tau> |
/// ucb1 | ucb1tuned | random | randomwalk:<alpha>,<beta>.
PolicySpec parse_policy(const std::string& token);

/// Instantiates a policy for an environment with the given true (initial)
/// probabilities; needed so "auto" omega can see gamma. Throws ConfigError
/// on arity mismatches (e.g. cheater with M != 2).
std::unique_ptr<Policy> make_policy(const PolicySpec& spec, const std::vector<double>& probs);

}  // namespace towbandit::harness
