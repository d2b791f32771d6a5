#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace towbandit {

// Seed derivation for independent streams. SplitMix64 finalizer applied to
// base + GOLDEN*(k+1), so stream k of a given base seed is stable no matter
// how many streams are ever drawn (trial sets stay extensible).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t k) {
    std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (k + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. mt19937_64 output is fully specified by the
// standard, and all value derivations below avoid std:: distributions (whose
// sequences are implementation-defined), so a fixed seed gives bit-identical
// results on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_unit() < p; }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * next_unit();
    }

    /// Standard normal via Box-Muller; consumes exactly two draws per call.
    double gaussian() {
        double u1 = 1.0 - next_unit();  // (0, 1], keeps log finite
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform integer in [0, n). Multiply-shift; bias is O(n / 2^64).
    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::mt19937_64 gen_;
};

/// Index of the largest value; exact ties are broken uniformly at random.
inline std::size_t argmax_random_tie(const std::vector<double>& values, Rng& rng) {
    std::size_t best = 0;
    std::size_t ties = 1;
    for (std::size_t k = 1; k < values.size(); ++k) {
        if (values[k] > values[best]) {
            best = k;
            ties = 1;
        } else if (values[k] == values[best]) {
            // Reservoir-style: the j-th tied candidate wins with prob 1/j.
            ++ties;
            if (rng.below(ties) == 0) best = k;
        }
    }
    return best;
}

}  // namespace towbandit
