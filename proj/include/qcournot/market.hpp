#pragma once

// General N-firm Cournot model with linear inverse demand
//
//   p_i = a_i - sum_j gamma_ij q_j        (gamma_ii stored equal to theta_i)
//   pi_i = q_i p_i
//
// The unconstrained Nash equilibrium solves the first-order conditions
// Gamma q* = a, where Gamma doubles the diagonal. Everything here is a pure
// function over immutable inputs.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "qcournot/errors.hpp"
#include "qcournot/numerics.hpp"

namespace qcournot::market {

using numerics::dense_matrix;

/// Demand intercepts, own-price sensitivities, and the cross-sensitivity
/// matrix of an N-firm market. The gamma diagonal duplicates theta by
/// convention so that p_i = a_i - sum_j gamma_ij q_j reads uniformly;
/// validate() keeps the two in sync.
struct market_params {
    std::size_t n = 0;
    std::vector<double> a;      // demand intercepts, > 0
    std::vector<double> theta;  // own sensitivities, > 0
    dense_matrix gamma;         // cross sensitivities, >= 0, diag == theta

    /// Builds params from intercepts, own sensitivities, and off-diagonal
    /// cross sensitivities; fills the gamma diagonal from theta.
    static market_params make(std::vector<double> intercepts, std::vector<double> own,
                              dense_matrix cross) {
        market_params p;
        p.n = intercepts.size();
        p.a = std::move(intercepts);
        p.theta = std::move(own);
        p.gamma = std::move(cross);
        for (std::size_t i = 0; i < p.n && i < p.gamma.rows; ++i) p.gamma.at(i, i) = p.theta[i];
        p.validate();
        return p;
    }

    /// Hard invariants: sizes, positivity, gamma diagonal equal to theta.
    /// Violations of the soft assumption theta_i >= gamma_ij are reported by
    /// warnings(), not here.
    void validate() const {
        if (n < 1) throw error("market_params: need at least one firm");
        if (a.size() != n || theta.size() != n || gamma.rows != n || gamma.cols != n) {
            throw error("market_params: inconsistent dimensions");
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!(a[i] > 0.0)) throw error("market_params: demand intercepts must be positive");
            if (!(theta[i] > 0.0)) throw error("market_params: theta must be positive");
            if (gamma.at(i, i) != theta[i]) {
                throw error("market_params: gamma diagonal must equal theta (firm " +
                            std::to_string(i) + ")");
            }
            for (std::size_t j = 0; j < n; ++j) {
                if (!(gamma.at(i, j) >= 0.0)) {
                    throw error("market_params: cross sensitivities must be nonnegative");
                }
            }
        }
    }

    /// Soft-assumption violations (theta_i < gamma_ij for some rival j):
    /// constructible but worth surfacing to callers.
    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j && theta[i] < gamma.at(i, j)) {
                    out.push_back("theta[" + std::to_string(i) + "] < gamma[" + std::to_string(i) +
                                  "][" + std::to_string(j) + "]: rival influence exceeds own");
                }
            }
        }
        return out;
    }
};

/// The first-order-condition matrix: 2*theta_i on the diagonal, gamma_ij off it.
struct gamma_matrix {
    dense_matrix entries;
};

inline gamma_matrix build_gamma(const market_params& p) {
    gamma_matrix g{p.gamma};
    for (std::size_t i = 0; i < p.n; ++i) g.entries.at(i, i) = 2.0 * p.theta[i];
    return g;
}

struct dominance_result {
    bool dominant = false;  // strict row diagonal dominance everywhere
    double margin = 0.0;    // minimum row slack |d_ii| - sum_j |d_ij|, negative when violated
};

inline dominance_result is_diagonally_dominant(const dense_matrix& m) {
    if (m.rows != m.cols) throw error("is_diagonally_dominant: matrix must be square");
    dominance_result r;
    r.margin = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m.rows; ++i) {
        double off = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j)
            if (j != i) off += std::abs(m.at(i, j));
        r.margin = std::min(r.margin, std::abs(m.at(i, i)) - off);
    }
    r.dominant = r.margin > 0.0;
    return r;
}

inline dominance_result is_diagonally_dominant(const gamma_matrix& g) {
    return is_diagonally_dominant(g.entries);
}

/// p_i = a_i - sum_j gamma_ij q_j with gamma_ii = theta_i.
inline std::vector<double> prices(const market_params& p, const std::vector<double>& q) {
    if (q.size() != p.n) throw error("prices: quantity vector length mismatch");
    std::vector<double> out(p.n, 0.0);
    for (std::size_t i = 0; i < p.n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.n; ++j) s += p.gamma.at(i, j) * q[j];
        out[i] = p.a[i] - s;
    }
    return out;
}

/// pi_i = q_i * p_i.
inline std::vector<double> profits(const market_params& p, const std::vector<double>& q) {
    if (q.size() != p.n) throw error("profits: quantity vector length mismatch");
    std::vector<double> pr = prices(p, q);
    for (std::size_t i = 0; i < p.n; ++i) pr[i] *= q[i];
    return pr;
}

/// r_i = a_i - 2 theta_i q_i - sum_{j != i} gamma_ij q_j; the zero vector
/// exactly at the unconstrained Nash point.
inline std::vector<double> foc_residual(const market_params& p, const std::vector<double>& q) {
    if (q.size() != p.n) throw error("foc_residual: quantity vector length mismatch");
    std::vector<double> out(p.n, 0.0);
    for (std::size_t i = 0; i < p.n; ++i) {
        double s = 2.0 * p.theta[i] * q[i];
        for (std::size_t j = 0; j < p.n; ++j)
            if (j != i) s += p.gamma.at(i, j) * q[j];
        out[i] = p.a[i] - s;
    }
    return out;
}

/// Equilibrium quantities, prices, and profits plus diagnostics. Negative
/// quantities or prices are reported as-is with all_nonnegative=false;
/// clamping here would silently change the game, so downstream callers decide.
struct equilibrium {
    std::vector<double> quantities;
    std::vector<double> prices;
    std::vector<double> profits;
    bool all_nonnegative = false;
    double foc_residual_max = 0.0;
};

/// Solves Gamma q* = a by pivoted elimination and populates diagnostics.
inline equilibrium solve_equilibrium(const market_params& p) {
    const gamma_matrix g = build_gamma(p);
    equilibrium eq;
    eq.quantities = numerics::linsolve(g.entries, p.a);
    eq.prices = prices(p, eq.quantities);
    eq.profits = profits(p, eq.quantities);
    eq.all_nonnegative = true;
    for (std::size_t i = 0; i < p.n; ++i) {
        if (eq.quantities[i] < 0.0 || eq.prices[i] < 0.0) eq.all_nonnegative = false;
    }
    eq.foc_residual_max = 0.0;
    for (double r : foc_residual(p, eq.quantities)) {
        eq.foc_residual_max = std::max(eq.foc_residual_max, std::abs(r));
    }
    return eq;
}

} // namespace qcournot::market
