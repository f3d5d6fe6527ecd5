#pragma once

// Seeded random market instances for the verification suites and property
// tests. Uniform doubles are derived from raw mt19937_64 output so that a
// fixed seed reproduces bit-identical instances on any platform.

#include <cstdint>
#include <random>
#include <string>

#include "qcournot/closed_form.hpp"
#include "qcournot/market.hpp"

namespace qcournot::rnd {

class instance_rng {
public:
    explicit instance_rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double u01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

    std::size_t uniform_index(std::size_t lo, std::size_t hi) {
        return lo + static_cast<std::size_t>(engine_() % (hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// Random two-group parameters whose expanded FOC matrix is strictly
/// diagonally dominant (rejection sampled; the dominance margin is kept away
/// from zero so conditioning stays benign).
inline closed_form::two_group_params random_two_group(instance_rng& rng,
                                                      std::size_t max_group = 8) {
    for (;;) {
        closed_form::two_group_params p;
        p.n_q = rng.uniform_index(1, max_group);
        p.n_c = rng.uniform_index(1, max_group);
        p.a_q = rng.uniform(1.0, 50.0);
        p.a_c = rng.uniform(1.0, 50.0);
        p.theta_q = rng.uniform(0.5, 5.0);
        p.theta_c = rng.uniform(0.5, 5.0);
        p.gamma_qq = rng.uniform(0.0, 0.99 * p.theta_q);
        p.gamma_cc = rng.uniform(0.0, 0.99 * p.theta_c);
        p.gamma_qc = rng.uniform(0.0, 0.99 * std::min(p.theta_q, p.theta_c));
        const double nq = static_cast<double>(p.n_q);
        const double nc = static_cast<double>(p.n_c);
        const double margin_q = 2.0 * p.theta_q - ((nq - 1.0) * p.gamma_qq + nc * p.gamma_qc);
        const double margin_c = 2.0 * p.theta_c - ((nc - 1.0) * p.gamma_cc + nq * p.gamma_qc);
        if (margin_q > 0.01 && margin_c > 0.01) return p;
    }
}

/// Random N-firm parameters built strictly diagonally dominant by
/// construction (off-diagonal entries capped at both theta_i and the
/// dominance budget 1.9 theta_i / (n-1)).
inline market::market_params random_dominant_market(instance_rng& rng, std::size_t n) {
    std::vector<double> a(n), theta(n);
    numerics::dense_matrix gamma(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.uniform(1.0, 50.0);
        theta[i] = rng.uniform(0.5, 5.0);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double budget =
            n > 1 ? std::min(theta[i], 1.9 * theta[i] / static_cast<double>(n - 1)) : 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            gamma.at(i, j) = (i == j) ? theta[i] : rng.uniform(0.0, 0.95 * budget);
        }
    }
    return market::market_params::make(std::move(a), std::move(theta), std::move(gamma));
}

inline std::string describe(const closed_form::two_group_params& p) {
    return "two_group_params{n_q=" + std::to_string(p.n_q) + ", n_c=" + std::to_string(p.n_c) +
           ", a_q=" + std::to_string(p.a_q) + ", a_c=" + std::to_string(p.a_c) +
           ", theta_q=" + std::to_string(p.theta_q) + ", theta_c=" + std::to_string(p.theta_c) +
           ", gamma_qq=" + std::to_string(p.gamma_qq) + ", gamma_cc=" + std::to_string(p.gamma_cc) +
           ", gamma_qc=" + std::to_string(p.gamma_qc) + "}";
}

} // namespace qcournot::rnd
