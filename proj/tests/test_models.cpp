#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "towbandit/models.hpp"
#include "towbandit/tow.hpp"

using namespace towbandit;
using models::Baseline;
using models::CheaterState;
using models::RandomWalkState;

TEST_CASE("rw_step applies the flights from the walk model") {
    RandomWalkState s(2, 1.0, 1.0);
    models::rw_step(s, 0, true);
    CHECK(s.r[0] == 1.0);

    RandomWalkState s2(2, 1.0, 2.0);
    models::rw_step(s2, 0, true);
    models::rw_step(s2, 0, false);
    CHECK(s2.r[0] == -1.0);

    CHECK_THROWS_AS(models::rw_step(s2, 7, true), std::out_of_range);
    CHECK_THROWS_AS(RandomWalkState(2, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("rw bookkeeping matches the closed form alpha*N - (alpha+beta)*L") {
    Rng rng(31);
    RandomWalkState s(2, 1.25, 0.75);
    std::uint64_t n[2] = {0, 0};
    std::uint64_t l[2] = {0, 0};
    for (int i = 0; i < 4000; ++i) {
        std::size_t k = rng.below(2);
        bool reward = rng.bernoulli(0.55);
        models::rw_step(s, k, reward);
        ++n[k];
        if (!reward) ++l[k];
    }
    for (std::size_t k = 0; k < 2; ++k) {
        double expected = 1.25 * static_cast<double>(n[k]) -
                          (1.25 + 0.75) * static_cast<double>(l[k]);
        CHECK(std::fabs(s.r[k] - expected) <= 1e-9);
    }
}

TEST_CASE("rw_expected evaluates the drift formula") {
    CHECK(models::rw_expected(1.0, 1.0, 0.5, 12345) == 0.0);
    CHECK(models::rw_expected(1.0, 1.0, 0.6, 100) == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(models::rw_expected(2.0, 3.0, 0.9, 0) == 0.0);
    CHECK_THROWS_AS(models::rw_expected(1.0, 1.0, 1.5, 10), std::invalid_argument);
}

TEST_CASE("separation_ok checks the strict threshold window") {
    CHECK(models::separation_ok(1.0, 1.0, 0.6, 0.4));
    CHECK_FALSE(models::separation_ok(9.0, 1.0, 0.6, 0.4));
    // threshold lands exactly on p_a: 3/(2+3) = 0.6
    CHECK_FALSE(models::separation_ok(2.0, 3.0, 0.6, 0.4));
    CHECK_THROWS_AS(models::separation_ok(1.0, 1.0, 0.4, 0.6), std::invalid_argument);
}

TEST_CASE("alpha_beta ratio and omega_zero are the same quantity") {
    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
        double gamma = 0.01 + 1.98 * rng.next_unit();
        CHECK(models::alpha_beta_ratio_from_gamma(gamma) == tow::omega_zero(gamma));
    }
}

TEST_CASE("cheater_step pulls both machines and declares the larger sum") {
    BanditEnv env({1.0, 0.0}, 9);
    CheaterState s;
    Rng rng(2);
    std::size_t declared = models::cheater_step(s, env, 1, rng);
    CHECK(s.s[0] == 1.0);
    CHECK(s.s[1] == 0.0);
    CHECK(declared == 0);
    CHECK(env.pulls_made() == 2);

    for (std::uint64_t t = 2; t <= 40; ++t) {
        CHECK(models::cheater_step(s, env, t, rng) == 0);
    }
    CHECK(env.pulls_made() == 80);
}

TEST_CASE("cheater ties are declared uniformly at random") {
    CheaterState s;
    s.s = {2.0, 2.0};
    Rng rng(10101);
    const int n = 10000;
    int first = 0;
    for (int i = 0; i < n; ++i) {
        if (models::cheater_declared(s, rng) == 0) ++first;
    }
    double rate = static_cast<double>(first) / n;
    CHECK(std::fabs(rate - 0.5) < 3.0 * std::sqrt(0.25 / n));
}

TEST_CASE("cheater rejects environments with more than two machines") {
    BanditEnv env({0.5, 0.5, 0.5}, 1);
    CheaterState s;
    Rng rng(1);
    CHECK_THROWS_AS(models::cheater_step(s, env, 1, rng), std::invalid_argument);
}

namespace {
PlayHistory history2(std::uint64_t na, std::uint64_t nb, std::uint64_t la, std::uint64_t lb) {
    PlayHistory h(2);
    h.plays = {na, nb};
    h.losses = {la, lb};
    return h;
}
}  // namespace

TEST_CASE("q_prime evaluates the simultaneous-update estimates") {
    auto [qa0, qb0] = models::q_prime(history2(0, 0, 0, 0), 0.37);
    CHECK(qa0 == 0.0);
    CHECK(qb0 == 0.0);

    auto [qa, qb] = models::q_prime(history2(3, 2, 1, 2), 1.0);
    CHECK(qa == 4.0);
    CHECK(qb == 1.0);

    auto [qa2, qb2] = models::q_prime(history2(7, 0, 3, 0), 1.0);
    CHECK(qa2 == 4.0);  // N_A - L_A when the other machine was never played
    CHECK(qb2 == 3.0);
}

TEST_CASE("q_diff evaluates the learning-rule difference") {
    CHECK(models::q_diff(history2(4, 4, 2, 2), 0.77) == 0.0);
    CHECK(models::q_diff(history2(3, 2, 1, 2), 1.0) == 3.0);
    // equal losses: the omega term cancels
    CHECK(models::q_diff(history2(9, 5, 3, 3), 0.123) == 4.0);
    CHECK(models::q_diff(history2(9, 5, 3, 3), 1.9) == 4.0);
}

TEST_CASE("q_double_prime_diff matches q_diff at omega_zero") {
    CHECK(models::q_double_prime_diff(history2(3, 2, 1, 2), 1.0) == 3.0);
    CHECK(models::q_double_prime_diff(history2(4, 4, 2, 2), 0.3) == 0.0);
    CHECK_THROWS_AS(models::q_double_prime_diff(history2(1, 1, 0, 0), 2.0),
                    std::domain_error);

    Rng rng(314159);
    for (int i = 0; i < 10000; ++i) {
        auto h = history2(rng.below(10001), rng.below(10001), 0, 0);
        h.losses = {rng.below(h.plays[0] + 1), rng.below(h.plays[1] + 1)};
        double gamma = 0.05 + 1.9 * rng.next_unit();
        double lhs = models::q_double_prime_diff(h, gamma);
        double rhs = models::q_diff(h, tow::omega_zero(gamma));
        CHECK(std::fabs(lhs - rhs) <= 1e-9);
        // also consistent with (Q'_A - Q'_B) / (2 - gamma)
        auto [qa, qb] = models::q_prime(h, gamma);
        CHECK(std::fabs(lhs - (qa - qb) / (2.0 - gamma)) <=
              1e-9 * std::max(1.0, std::fabs(lhs)));
        if (lhs != 0.0) {
            CHECK(std::signbit(lhs) == std::signbit(rhs));
        }
    }
}

TEST_CASE("epsilon-greedy explores and exploits as configured") {
    PlayHistory h(2);
    h.plays = {10, 10};
    h.losses = {2, 8};  // means 0.8 and 0.2

    Rng rng(555);
    auto pure_exploit = Baseline::epsilon_greedy(0.0);
    for (int i = 0; i < 100; ++i) {
        CHECK(models::baseline_select(pure_exploit, h, rng) == 0);
    }

    auto pure_explore = Baseline::epsilon_greedy(1.0);
    const int n = 10000;
    int first = 0;
    for (int i = 0; i < n; ++i) {
        if (models::baseline_select(pure_explore, h, rng) == 0) ++first;
    }
    double rate = static_cast<double>(first) / n;
    CHECK(std::fabs(rate - 0.5) < 3.0 * std::sqrt(0.25 / n));

    CHECK_THROWS_AS(Baseline::epsilon_greedy(1.5), std::invalid_argument);
    CHECK_THROWS_AS(Baseline::epsilon_greedy(-0.1), std::invalid_argument);
}

TEST_CASE("softmax becomes uniform at high temperature and greedy at low") {
    PlayHistory h(2);
    h.plays = {10, 10};
    h.losses = {2, 8};

    Rng rng(66);
    auto hot = Baseline::softmax(1e9);
    const int n = 10000;
    int first = 0;
    for (int i = 0; i < n; ++i) {
        if (models::baseline_select(hot, h, rng) == 0) ++first;
    }
    double rate = static_cast<double>(first) / n;
    CHECK(std::fabs(rate - 0.5) < 3.0 * std::sqrt(0.25 / n));

    auto cold = Baseline::softmax(1e-4);
    for (int i = 0; i < 100; ++i) {
        CHECK(models::baseline_select(cold, h, rng) == 0);
    }

    CHECK_THROWS_AS(Baseline::softmax(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Baseline::softmax(-1.0), std::invalid_argument);
}

TEST_CASE("UCB variants round-robin through unplayed machines first") {
    PlayHistory h(3);
    Rng rng(4);
    for (auto kind : {Baseline::ucb1(), Baseline::ucb1_tuned()}) {
        PlayHistory fresh(3);
        CHECK(models::baseline_select(kind, fresh, rng) == 0);
        fresh.record(0, true);
        CHECK(models::baseline_select(kind, fresh, rng) == 1);
        fresh.record(1, false);
        CHECK(models::baseline_select(kind, fresh, rng) == 2);
    }
}

TEST_CASE("UCB1 index agrees with a direct evaluation") {
    PlayHistory h(2);
    h.plays = {2, 1};
    h.losses = {1, 0};  // means 0.5 and 1.0
    Rng rng(8);
    double n = 3.0;
    double idx0 = 0.5 + std::sqrt(2.0 * std::log(n) / 2.0);
    double idx1 = 1.0 + std::sqrt(2.0 * std::log(n) / 1.0);
    std::size_t expected = idx1 > idx0 ? 1 : 0;
    CHECK(models::baseline_select(Baseline::ucb1(), h, rng) == expected);
}

TEST_CASE("UCB1-tuned caps the exploration variance at 1/4") {
    PlayHistory h(2);
    h.plays = {50, 40};
    h.losses = {10, 30};  // means 0.8 and 0.25
    Rng rng(8);
    double n = 90.0;
    auto index = [&](double mean, double nk) {
        double vk = mean * (1.0 - mean) + std::sqrt(2.0 * std::log(n) / nk);
        return mean + std::sqrt(std::log(n) / nk * std::min(0.25, vk));
    };
    std::size_t expected = index(0.8, 50) >= index(0.25, 40) ? 0 : 1;
    CHECK(models::baseline_select(Baseline::ucb1_tuned(), h, rng) == expected);
}

TEST_CASE("random baseline is uniform") {
    PlayHistory h(4);
    Rng rng(99);
    const int n = 20000;
    int counts[4] = {0, 0, 0, 0};
    for (int i = 0; i < n; ++i) {
        ++counts[models::baseline_select(Baseline::random(), h, rng)];
    }
    for (int c : counts) {
        double rate = static_cast<double>(c) / n;
        CHECK(std::fabs(rate - 0.25) < 3.0 * std::sqrt(0.25 * 0.75 / n));
    }
}
