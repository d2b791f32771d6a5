#pragma once

#include <cstdint>
#include <utility>

namespace towbandit::analysis {

/// Standard normal upper-tail probability Q(x) = P(Z > x).
double qfunc(double x);

/// Chernoff bound (1/2) exp(-x^2/2) >= Q(x), valid for x >= 0.
double chernoff(double x);

/// Bernoulli variance p(1-p); every concrete instance here is coin-valued.
double bernoulli_variance(double p);

/// Cheater separation parameter phi = (mu_a - mu_b) / sqrt(sa2 + sb2) where
/// sa2, sb2 are the per-pull variances.
double phi(double mu_a, double mu_b, double sigma_a, double sigma_b);

/// TOW separation parameter phi_T = (mu_a - mu_b)(1 + omega0) / (2 sigma),
/// derived under omega = omega_0 and equal per-machine deviations sigma.
double phi_tow(double mu_a, double mu_b, double sigma, double omega0);

/// Probability of declaring the wrong machine after n steps: Q(phi*sqrt(n)).
double p_wrong(double phi_value, std::uint64_t n);

/// Closed-form upper bound on E(N_B) = sum_{t=0}^{N-1} Q(phi*sqrt(t)):
/// 1/2 - (1/phi^2)(exp(-phi^2 (N-1)/2) - 1). Non-decreasing in N.
double e_nb_bound(double phi_value, std::uint64_t n);

/// N -> infinity limit of the bound above: 1/2 + 1/phi^2.
double e_nb_limit(double phi_value);

/// Regret bound (mu_a - mu_b) * e_nb_bound(phi, n).
double regret_bound(double mu_a, double mu_b, double phi_value, std::uint64_t n);

/// Constant-regret limit (mu_a - mu_b) * (1/2 + 1/phi^2).
double regret_limit(double mu_a, double mu_b, double phi_value);

/// Moments of S = S_A - S_B for the TOW-analysis sums with N = N_A + N_B
/// total plays and D = N_A - N_B:
///   E(S) = ((mu_a-mu_b)/2)(1+omega) N + {((mu_a+mu_b)/2)(1+omega) - omega} D
///   V(S) = ((sa2+sb2)/2) N + ((sa2-sb2)/2) D
/// The D term of E(S) vanishes at omega = omega_zero(mu_a+mu_b).
struct SMoments {
    double mean = 0.0;
    double variance = 0.0;
};
SMoments s_moments_tow(double mu_a, double mu_b, double sigma_a, double sigma_b,
                       double omega, std::uint64_t n, std::int64_t d);

/// Analytic quantities for one two-machine Bernoulli instance: separation
/// parameters and the finite-N / limiting bounds for both the cheater
/// algorithm and TOW dynamics at omega_0.
struct BoundReport {
    double mu_a = 0.0;
    double mu_b = 0.0;
    std::uint64_t horizon = 0;
    double phi = 0.0;
    double phi_t = 0.0;
    struct Line {
        double e_nb_bound = 0.0;
        double e_nb_limit = 0.0;
        double regret_bound = 0.0;
        double regret_limit = 0.0;
    };
    Line cheater;
    Line tow;
};

/// Bernoulli variances implied by the means; phi_t uses the pooled deviation
/// sqrt((sa2+sb2)/2), which matches the analysis exactly when sa2 = sb2.
BoundReport make_bound_report(double mu_a, double mu_b, std::uint64_t horizon);

}  // namespace towbandit::analysis
