// Acceptance suite: one pass/fail line per criterion, exit status = number
// of failed criteria. argv[1] (optional) is the path to the tow_bandit CLI,
// used by the byte-determinism criterion. --regen-oracle recomputes the
// frozen four-machine regression value and exits.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "support/normal_oracle.hpp"
#include "support/tow_oracle.hpp"
#include "towbandit/analysis.hpp"
#include "towbandit/harness.hpp"
#include "towbandit/models.hpp"
#include "towbandit/tow.hpp"

using namespace towbandit;
namespace an = towbandit::analysis;

namespace {

int g_failures = 0;

void report(const std::string& id, const std::string& what, bool pass,
            const std::string& detail, double seconds) {
    if (!pass) ++g_failures;
    std::printf("criterion %-3s %-42s %s  (%.2fs%s%s)\n", id.c_str(), what.c_str(),
                pass ? "PASS" : "FAIL", seconds, detail.empty() ? "" : "; ",
                detail.c_str());
    std::fflush(stdout);
}

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(const char* format, ...) {
    char buf[256];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    return buf;
}

// --- criterion 1: q_diff / q_double_prime_diff identity ----------------------

void criterion_identity() {
    Timer timer;
    Rng rng(0xC1);
    std::vector<double> gammas(100);
    for (auto& g : gammas) g = 0.05 + 1.9 * rng.next_unit();

    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        PlayHistory h(2);
        h.plays = {rng.below(10001), rng.below(10001)};
        h.losses = {rng.below(h.plays[0] + 1), rng.below(h.plays[1] + 1)};
        for (double gamma : gammas) {
            double lhs = models::q_diff(h, tow::omega_zero(gamma));
            double rhs = models::q_double_prime_diff(h, gamma);
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
    }
    double secs = timer.seconds();
    bool pass = worst <= 1e-9 && secs < 5.0;
    report("1", "difference identity at omega_zero", pass,
           fmt("max |dQ - dQ''| = %.3g", worst), secs);
}

// --- criterion 2: Chernoff domination + Q-function accuracy -------------------

void criterion_chernoff() {
    Timer timer;
    bool dominated = true;
    for (int i = 0; i <= 1000; ++i) {
        double x = 0.01 * i;
        if (an::qfunc(x) > an::chernoff(x)) dominated = false;
    }
    double worst = 0.0;
    for (int i = -800; i <= 800; ++i) {
        double x = 0.01 * i;
        worst = std::max(worst, std::fabs(an::qfunc(x) - oracle::qfunc(x)));
    }
    double secs = timer.seconds();
    bool pass = dominated && worst <= 1e-10 && secs < 5.0;
    report("2", "Chernoff bound and Q-function accuracy", pass,
           fmt("max |Q - oracle| = %.3g", worst), secs);
}

// --- criteria 3 and 4: constant-regret Monte Carlo ----------------------------

struct RegretStats {
    double mean_nb = 0.0;
    double se_nb = 0.0;
    double mean_flat = 0.0;  // cum_regret(final) - cum_regret(mid)
    double se_flat = 0.0;
};

RegretStats collect_regret(const harness::RunConfig& config, std::uint64_t mid) {
    const std::uint64_t trials = config.trials;
    const std::uint64_t fin = config.horizon;
    double nb_sum = 0.0, nb_sq = 0.0, d_sum = 0.0, d_sq = 0.0;
    for (std::uint64_t i = 0; i < trials; ++i) {
        harness::TrialRecord rec = harness::run_trial(config, i);
        std::uint64_t nb = 0;
        for (std::uint32_t c : rec.chosen) {
            if (c != 0) ++nb;  // machine 0 is the best in these setups
        }
        double nbd = static_cast<double>(nb);
        double diff = rec.cum_regret[fin - 1] - rec.cum_regret[mid - 1];
        nb_sum += nbd;
        nb_sq += nbd * nbd;
        d_sum += diff;
        d_sq += diff * diff;
    }
    auto n = static_cast<double>(trials);
    RegretStats s;
    s.mean_nb = nb_sum / n;
    s.mean_flat = d_sum / n;
    s.se_nb = std::sqrt(std::max(0.0, (nb_sq - n * s.mean_nb * s.mean_nb) / (n - 1.0)) / n);
    s.se_flat =
        std::sqrt(std::max(0.0, (d_sq - n * s.mean_flat * s.mean_flat) / (n - 1.0)) / n);
    return s;
}

void criterion_cheater_regret() {
    Timer timer;
    harness::RunConfig config;
    config.probs = {0.6, 0.4};
    config.policy = harness::parse_policy("cheater");
    config.horizon = 2000;
    config.trials = 10000;
    config.base_seed = 0xACC3;
    RegretStats s = collect_regret(config, 1000);

    double sigma = std::sqrt(an::bernoulli_variance(0.6));
    double limit = an::e_nb_limit(an::phi(0.6, 0.4, sigma, sigma));  // 12.5
    double secs = timer.seconds();

    bool pass_nb = s.mean_nb <= limit + 3.0 * s.se_nb && secs < 60.0;
    report("3a", "cheater E(N_B) within constant limit", pass_nb,
           fmt("mean N_B = %.3f vs %.3f + 3*%.3f", s.mean_nb, limit, s.se_nb), secs);

    bool pass_flat = s.mean_flat <= 0.05 + 3.0 * s.se_flat && secs < 60.0;
    report("3b", "cheater regret flattens", pass_flat,
           fmt("regret(2000)-regret(1000) = %.4f vs 0.05 + 3*%.4f", s.mean_flat, s.se_flat),
           secs);
}

void criterion_tow_regret() {
    Timer timer;
    double sigma = std::sqrt(an::bernoulli_variance(0.6));
    double omega0 = tow::omega_zero(1.0);
    double limit = an::e_nb_limit(an::phi_tow(0.6, 0.4, sigma, omega0));  // 6.5
    const double delta_slack = 1.0;

    for (double amplitude : {0.0, 0.1}) {
        harness::RunConfig config;
        config.probs = {0.6, 0.4};
        config.policy = harness::parse_policy("tow");
        config.policy.omega.kind = harness::OmegaSetting::Kind::Auto;
        config.policy.fluct.kind = tow::FluctKind::UniformNoise;
        config.policy.fluct.amplitude = amplitude;
        config.horizon = 2000;
        config.trials = 10000;
        config.base_seed = 0xACC4;

        Timer amp_timer;
        RegretStats s = collect_regret(config, 1000);
        double secs = amp_timer.seconds();

        std::string amp = amplitude == 0.0 ? "0" : "0.1";
        bool pass_nb = s.mean_nb <= limit + 3.0 * s.se_nb + delta_slack && secs < 60.0;
        report("4a", "tow E(N_B) within phi_T limit, amp=" + amp, pass_nb,
               fmt("mean N_B = %.3f vs %.3f + 3*%.3f + %.1f", s.mean_nb, limit, s.se_nb,
                   delta_slack),
               secs);

        bool pass_flat = s.mean_flat <= 0.05 + 3.0 * s.se_flat && secs < 60.0;
        report("4b", "tow regret flattens, amp=" + amp, pass_flat,
               fmt("regret(2000)-regret(1000) = %.4f vs 0.05 + 3*%.4f", s.mean_flat,
                   s.se_flat),
               secs);
    }
    (void)timer;
}

// --- criterion 5: relative performance with common random numbers -------------

double final_mean_regret(const std::string& policy, std::uint64_t seed) {
    harness::RunConfig config;
    config.probs = {0.6, 0.4};
    config.policy = harness::parse_policy(policy);
    if (config.policy.kind == harness::PolicySpec::Kind::Tow) {
        config.policy.omega.kind = harness::OmegaSetting::Kind::Auto;
        config.policy.fluct.kind = tow::FluctKind::UniformNoise;
        config.policy.fluct.amplitude = 0.5;
    }
    config.horizon = 1000;
    config.trials = 10000;
    config.base_seed = seed;
    config.record_stride = 1000;
    harness::AggregateMetrics m = harness::run_experiment(config);
    return m.mean_regret.back();
}

void criterion_relative_performance() {
    Timer timer;
    const std::uint64_t seed = 0xACC5;  // shared: common random numbers
    double tow = final_mean_regret("tow", seed);
    bool pass = true;
    std::ostringstream detail;
    detail << "tow = " << fmt("%.2f", tow);
    for (const char* rival : {"egreedy:0.05", "egreedy:0.1", "egreedy:0.2", "ucb1"}) {
        double r = final_mean_regret(rival, seed);
        detail << ", " << rival << " = " << fmt("%.2f", r);
        if (!(tow < r)) pass = false;
    }
    report("5", "tow beats egreedy and UCB1 at horizon 1000", pass, detail.str(),
           timer.seconds());
}

// --- criterion 6: random-walk separation --------------------------------------

void criterion_random_walk() {
    Timer timer;
    Rng rng(0xACC6);
    int sign_ok = 0;
    bool separation = true;
    bool drift_signs = true;
    const int pairs = 1000;
    for (int i = 0; i < pairs; ++i) {
        double p_b = 0.01 + 0.77 * rng.next_unit();
        double p_a = p_b + 0.2 + (0.99 - p_b - 0.2) * rng.next_unit();
        double gamma = p_a + p_b;
        double beta = models::alpha_beta_ratio_from_gamma(gamma);

        if (!models::separation_ok(1.0, beta, p_a, p_b)) separation = false;
        if (!(models::rw_expected(1.0, beta, p_a, 10000) > 0.0)) drift_signs = false;
        if (!(models::rw_expected(1.0, beta, p_b, 10000) < 0.0)) drift_signs = false;

        models::RandomWalkState walk(2, 1.0, beta);
        for (int t = 0; t < 10000; ++t) {
            models::rw_step(walk, 0, rng.bernoulli(p_a));
            models::rw_step(walk, 1, rng.bernoulli(p_b));
        }
        if (walk.r[0] > 0.0 && walk.r[1] < 0.0) ++sign_ok;
    }
    bool pass = separation && drift_signs && sign_ok >= 990;
    report("6", "random-walk separation at beta = omega_0", pass,
           fmt("separation %s, drift signs %s, %d/1000 walks signed correctly",
               separation ? "ok" : "violated", drift_signs ? "ok" : "violated", sign_ok),
           timer.seconds());
}

// --- criterion 7: four-machine generalization ---------------------------------

// Frozen regression value: final-step correct-selection rate of the
// brute-force oracle (tests/support/tow_oracle.hpp) for probs
// (0.7,0.5,0.3,0.1), omega = omega_0(0.7+0.5) = 1.5, uniform delta 0.5,
// horizon 1000, 200000 trials, seed 0xFACE. Regenerate: acceptance --regen-oracle.
constexpr double kFourMachineOracleRate = 1.000000;
constexpr double kFourMachineTolerance = 0.004;

oracle::TowSimResult run_four_machine_oracle(std::uint64_t trials) {
    return oracle::simulate_tow({0.7, 0.5, 0.3, 0.1}, 1.5, 0.5, 1000, trials, 0xFACE);
}

void criterion_four_machines() {
    Timer timer;
    harness::RunConfig config;
    config.probs = {0.7, 0.5, 0.3, 0.1};
    config.policy = harness::parse_policy("tow");
    config.policy.omega.kind = harness::OmegaSetting::Kind::Auto;  // gamma' = 1.2
    config.policy.fluct.kind = tow::FluctKind::UniformNoise;
    config.policy.fluct.amplitude = 0.5;
    config.horizon = 1000;
    config.trials = 10000;
    config.base_seed = 0xACC7;
    config.record_stride = 1000;

    harness::AggregateMetrics m = harness::run_experiment(config);
    double rate = m.correct_rate.back();
    double secs = timer.seconds();

    bool beats_uniform = rate >= 3.0 * 0.25;
    bool matches_oracle = std::fabs(rate - kFourMachineOracleRate) <= kFourMachineTolerance;
    report("7", "four machines: correct rate 3x uniform", beats_uniform && matches_oracle,
           fmt("rate = %.4f, frozen oracle = %.4f +- %.3f", rate, kFourMachineOracleRate,
               kFourMachineTolerance),
           secs);
}

// --- criterion 8: D coefficient vanishes at omega_zero -------------------------

void criterion_d_coefficient() {
    Timer timer;
    Rng rng(0xACC8);
    double worst = 0.0;
    int done = 0;
    while (done < 1000) {
        double mu_b = rng.next_unit();
        double mu_a = rng.next_unit();
        if (mu_a <= mu_b) std::swap(mu_a, mu_b);
        double gamma = mu_a + mu_b;
        if (mu_a == mu_b || gamma <= 0.05 || gamma >= 1.95) continue;
        ++done;
        double omega = tow::omega_zero(gamma);
        double sa = std::sqrt(an::bernoulli_variance(mu_a));
        double sb = std::sqrt(an::bernoulli_variance(mu_b));
        double coef = an::s_moments_tow(mu_a, mu_b, sa, sb, omega, 1, 1).mean -
                      an::s_moments_tow(mu_a, mu_b, sa, sb, omega, 1, 0).mean;
        worst = std::max(worst, std::fabs(coef));
    }
    bool pass = worst <= 1e-12;
    report("8", "E(S) D-coefficient vanishes at omega_0", pass,
           fmt("max |coef| = %.3g", worst), timer.seconds());
}

// --- criterion 9: CLI byte determinism -----------------------------------------

void criterion_cli_determinism(const std::string& cli_path) {
    Timer timer;
    if (cli_path.empty()) {
        report("9", "run emits byte-identical CSV bodies", false,
               "no CLI path given (pass it as argv[1])", timer.seconds());
        return;
    }
    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    std::string base =
        "\"" + cli_path + "\" run --algo tow --omega auto --probs 0.6,0.4 --horizon 500 "
        "--trials 300 --seed 99 --out ";
    int rc1 = std::system((base + "acceptance_run_a.csv 2>/dev/null").c_str());
    int rc2 = std::system((base + "acceptance_run_b.csv 2>/dev/null").c_str());
    std::string a = slurp("acceptance_run_a.csv");
    std::string b = slurp("acceptance_run_b.csv");
    bool pass = rc1 == 0 && rc2 == 0 && !a.empty() && a == b;
    std::remove("acceptance_run_a.csv");
    std::remove("acceptance_run_b.csv");
    std::remove("acceptance_run_a.csv.json");
    std::remove("acceptance_run_b.csv.json");
    report("9", "run emits byte-identical CSV bodies", pass,
           fmt("%zu bytes, %s", a.size(), a == b ? "identical" : "DIFFER"),
           timer.seconds());
}

}  // namespace

int main(int argc, char** argv) {
    std::string cli_path;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--regen-oracle") {
            auto r = run_four_machine_oracle(200000);
            std::printf("four-machine oracle rate (200000 trials): %.6f\n",
                        r.final_correct_rate);
            std::printf("mean suboptimal plays: %.4f\n", r.mean_suboptimal_plays);
            return 0;
        }
        cli_path = arg;
    }

    criterion_identity();
    criterion_chernoff();
    criterion_cheater_regret();
    criterion_tow_regret();
    criterion_relative_performance();
    criterion_random_walk();
    criterion_four_machines();
    criterion_d_coefficient();
    criterion_cli_determinism(cli_path);

    if (g_failures == 0) {
        std::printf("all acceptance criteria passed\n");
    } else {
        std::printf("%d acceptance check(s) failed\n", g_failures);
    }
    return g_failures;
}
