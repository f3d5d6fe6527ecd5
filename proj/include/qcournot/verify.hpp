#pragma once

// Randomized verification suites: every closed form is replayed against the
// pivoted linear solve on the expanded N-firm model, the block inverse is
// multiplied back against the FOC matrix, and the first-order conditions are
// probed with central differences at computed equilibria.

#include <cfloat>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qcournot/closed_form.hpp"
#include "qcournot/energy.hpp"
#include "qcournot/market.hpp"
#include "qcournot/numerics.hpp"
#include "qcournot/random_instances.hpp"

namespace qcournot::verify {

struct suite_result {
    std::string name;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double worst_residual = 0.0;
    double tolerance = 0.0;
    std::string first_failure;  // empty when the suite passed

    bool passed() const { return failures == 0; }
};

struct report {
    std::uint64_t seed = 0;
    std::vector<suite_result> suites;

    bool all_passed() const {
        for (const auto& s : suites)
            if (!s.passed()) return false;
        return true;
    }
};

/// Field-level relative deviation: max component difference over the larger
/// of the two field magnitudes.
inline double relative_field_error(const std::vector<double>& x, const std::vector<double>& y) {
    double diff = 0.0, scale = DBL_MIN;
    for (std::size_t i = 0; i < x.size(); ++i) {
        diff = std::max(diff, std::abs(x[i] - y[i]));
        scale = std::max({scale, std::abs(x[i]), std::abs(y[i])});
    }
    return diff / scale;
}

namespace detail {

inline void record(suite_result& s, double residual, const std::string& description,
                   std::size_t trial) {
    s.worst_residual = std::max(s.worst_residual, residual);
    if (residual > s.tolerance) {
        ++s.failures;
        if (s.first_failure.empty()) {
            s.first_failure = "trial " + std::to_string(trial) + ": residual " +
                              std::to_string(residual) + " on " + description;
        }
    }
}

} // namespace detail

/// Two-group closed form vs. expand + pivoted solve, on quantities, prices,
/// and profits.
inline suite_result run_oracle_equivalence(std::uint64_t seed, std::size_t trials,
                                           double tolerance = 1e-9) {
    suite_result s{"oracle-equivalence", trials, 0, 0.0, tolerance, {}};
    rnd::instance_rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto p = rnd::random_two_group(rng);
        const auto cf = closed_form::two_group_equilibrium(p);
        const auto expanded = closed_form::expand_two_group(p);
        const auto oracle = market::solve_equilibrium(expanded);

        const std::size_t n = expanded.n;
        std::vector<double> q(n), pr(n), pi(n);
        for (std::size_t i = 0; i < n; ++i) {
            const bool iq = i < p.n_q;
            q[i] = iq ? cf.q_q : cf.q_c;
            pr[i] = iq ? cf.p_q : cf.p_c;
            pi[i] = iq ? cf.pi_q : cf.pi_c;
        }
        const double residual = std::max({relative_field_error(q, oracle.quantities),
                                          relative_field_error(pr, oracle.prices),
                                          relative_field_error(pi, oracle.profits)});
        detail::record(s, residual, rnd::describe(p), t);
    }
    return s;
}

/// Reassembled block inverse times the FOC matrix vs. the identity, max-norm.
inline suite_result run_block_inverse_identity(std::uint64_t seed, std::size_t trials,
                                               double tolerance = 1e-10) {
    suite_result s{"block-inverse-identity", trials, 0, 0.0, tolerance, {}};
    rnd::instance_rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const auto p = rnd::random_two_group(rng);
        const auto inv = closed_form::assemble_block_inverse(p, closed_form::block_inverse(p));
        const auto gamma = market::build_gamma(closed_form::expand_two_group(p)).entries;
        const auto product = numerics::matmul(inv, gamma);
        double residual = 0.0;
        for (std::size_t i = 0; i < product.rows; ++i) {
            for (std::size_t j = 0; j < product.cols; ++j) {
                const double expected = i == j ? 1.0 : 0.0;
                residual = std::max(residual, std::abs(product.at(i, j) - expected));
            }
        }
        detail::record(s, residual, rnd::describe(p), t);
    }
    return s;
}

/// Central-difference derivative of each firm's profit in its own quantity at
/// the computed equilibrium; zero up to discretization there.
inline suite_result run_foc_gradient_check(std::uint64_t seed, std::size_t trials,
                                           double tolerance = 1e-4) {
    suite_result s{"foc-gradient", trials, 0, 0.0, tolerance, {}};
    rnd::instance_rng rng(seed);
    for (std::size_t t = 0; t < trials; ++t) {
        const std::size_t n = rng.uniform_index(1, 12);
        const auto p = rnd::random_dominant_market(rng, n);
        const auto eq = market::solve_equilibrium(p);
        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto f = [&](double x) {
                std::vector<double> q = eq.quantities;
                q[i] = x;
                return market::profits(p, q)[i];
            };
            const double h = 1e-6 * std::max(1.0, std::abs(eq.quantities[i]));
            residual = std::max(residual, std::abs(numerics::central_diff(f, eq.quantities[i], h)));
        }
        detail::record(s, residual, "market n=" + std::to_string(n), t);
    }
    return s;
}

/// Runs the three suites. Defaults match the per-suite acceptance trial
/// counts; an explicit trial count applies to all suites.
inline report run_all(std::uint64_t seed, std::size_t oracle_trials = 500,
                      std::size_t block_trials = 200, std::size_t foc_trials = 100) {
    report r;
    r.seed = seed;
    r.suites.push_back(run_oracle_equivalence(seed, oracle_trials));
    r.suites.push_back(run_block_inverse_identity(seed, block_trials));
    r.suites.push_back(run_foc_gradient_check(seed, foc_trials));
    return r;
}

} // namespace qcournot::verify
