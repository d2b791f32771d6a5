#include "towbandit/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "towbandit/tow.hpp"

namespace towbandit::analysis {

double qfunc(double x) {
    // 0.5 * erfc(x / sqrt(2)); erfc is good to a few ulp, far inside the
    // 1e-10 accuracy budget.
    return 0.5 * std::erfc(x * 0.7071067811865475244);
}

double chernoff(double x) {
    if (x < 0.0) {
        throw std::domain_error("chernoff bound is stated for x >= 0");
    }
    return 0.5 * std::exp(-0.5 * x * x);
}

double bernoulli_variance(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("p must lie in [0,1]");
    }
    return p * (1.0 - p);
}

double phi(double mu_a, double mu_b, double sigma_a, double sigma_b) {
    if (!(mu_a > mu_b)) {
        throw std::invalid_argument("phi requires mu_a > mu_b");
    }
    double combined = sigma_a * sigma_a + sigma_b * sigma_b;
    if (!(combined > 0.0)) {
        throw std::domain_error("phi requires positive combined variance");
    }
    return (mu_a - mu_b) / std::sqrt(combined);
}

double phi_tow(double mu_a, double mu_b, double sigma, double omega0) {
    if (!(mu_a > mu_b)) {
        throw std::invalid_argument("phi_tow requires mu_a > mu_b");
    }
    if (!(sigma > 0.0)) {
        throw std::domain_error("phi_tow requires sigma > 0");
    }
    if (omega0 < 0.0) {
        throw std::invalid_argument("omega0 must be >= 0");
    }
    return (mu_a - mu_b) * (1.0 + omega0) / (2.0 * sigma);
}

double p_wrong(double phi_value, std::uint64_t n) {
    if (!(phi_value > 0.0)) {
        throw std::invalid_argument("p_wrong requires phi > 0");
    }
    return qfunc(phi_value * std::sqrt(static_cast<double>(n)));
}

double e_nb_bound(double phi_value, std::uint64_t n) {
    if (!(phi_value > 0.0)) {
        throw std::invalid_argument("e_nb_bound requires phi > 0");
    }
    if (n < 1) {
        throw std::invalid_argument("e_nb_bound requires n >= 1");
    }
    double p2 = phi_value * phi_value;
    return 0.5 - (std::exp(-0.5 * p2 * static_cast<double>(n - 1)) - 1.0) / p2;
}

double e_nb_limit(double phi_value) {
    if (!(phi_value > 0.0)) {
        throw std::invalid_argument("e_nb_limit requires phi > 0");
    }
    return 0.5 + 1.0 / (phi_value * phi_value);
}

double regret_bound(double mu_a, double mu_b, double phi_value, std::uint64_t n) {
    return (mu_a - mu_b) * e_nb_bound(phi_value, n);
}

double regret_limit(double mu_a, double mu_b, double phi_value) {
    return (mu_a - mu_b) * e_nb_limit(phi_value);
}

SMoments s_moments_tow(double mu_a, double mu_b, double sigma_a, double sigma_b,
                       double omega, std::uint64_t n, std::int64_t d) {
    auto nn = static_cast<double>(n);
    auto dd = static_cast<double>(d);
    if (std::abs(dd) > nn) {
        throw std::invalid_argument("|D| cannot exceed N");
    }
    double gap_coef = 0.5 * (mu_a - mu_b) * (1.0 + omega);
    double d_coef = 0.5 * (mu_a + mu_b) * (1.0 + omega) - omega;
    double va = sigma_a * sigma_a;
    double vb = sigma_b * sigma_b;
    SMoments m;
    m.mean = gap_coef * nn + d_coef * dd;
    m.variance = 0.5 * (va + vb) * nn + 0.5 * (va - vb) * dd;
    return m;
}

BoundReport make_bound_report(double mu_a, double mu_b, std::uint64_t horizon) {
    if (horizon < 1) {
        throw std::invalid_argument("horizon must be >= 1");
    }
    BoundReport r;
    r.mu_a = mu_a;
    r.mu_b = mu_b;
    r.horizon = horizon;

    double sa = std::sqrt(bernoulli_variance(mu_a));
    double sb = std::sqrt(bernoulli_variance(mu_b));
    r.phi = phi(mu_a, mu_b, sa, sb);

    double omega0 = tow::omega_zero(mu_a + mu_b);
    double pooled = std::sqrt(0.5 * (sa * sa + sb * sb));
    r.phi_t = phi_tow(mu_a, mu_b, pooled, omega0);

    auto fill = [&](double p, BoundReport::Line& line) {
        line.e_nb_bound = e_nb_bound(p, horizon);
        line.e_nb_limit = e_nb_limit(p);
        line.regret_bound = regret_bound(mu_a, mu_b, p, horizon);
        line.regret_limit = regret_limit(mu_a, mu_b, p);
    };
    fill(r.phi, r.cheater);
    fill(r.phi_t, r.tow);
    return r;
}

}  // namespace towbandit::analysis
