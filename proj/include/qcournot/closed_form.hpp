#pragma once

// Closed-form equilibrium results for the two-group (quantum/classical)
// market and the homogeneous market:
//
//   * explicit inverse of the homogeneous FOC matrix (phi/psi entries),
//   * the two-group equilibrium quantities, prices, and profits,
//   * the Schur-complement block inverse of the two-group FOC matrix,
//   * the embedding of two-group parameters into the general N-firm model,
//     which is how every closed form here gets cross-checked against the
//     pivoted linear solve.

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "qcournot/errors.hpp"
#include "qcournot/market.hpp"
#include "qcournot/numerics.hpp"

namespace qcournot::closed_form {

using numerics::dense_matrix;

/// Block-symmetric market of n_q quantum and n_c classical firms. Within a
/// group every firm shares the same intercept and sensitivities.
struct two_group_params {
    std::size_t n_q = 1;
    std::size_t n_c = 1;
    double a_q = 0.0;
    double a_c = 0.0;
    double theta_q = 0.0;
    double theta_c = 0.0;
    double gamma_qq = 0.0;  // within quantum group
    double gamma_cc = 0.0;  // within classical group
    double gamma_qc = 0.0;  // between groups

    void validate() const {
        if (n_q < 1 || n_c < 1) throw error("two_group_params: group sizes must be >= 1");
        if (!(a_q > 0.0 && a_c > 0.0)) throw error("two_group_params: intercepts must be positive");
        if (!(theta_q > 0.0 && theta_c > 0.0)) throw error("two_group_params: theta must be positive");
        if (!(gamma_qq >= 0.0 && gamma_cc >= 0.0 && gamma_qc >= 0.0)) {
            throw error("two_group_params: cross sensitivities must be nonnegative");
        }
    }

    std::vector<std::string> warnings() const {
        std::vector<std::string> out;
        if (theta_q < gamma_qq) out.push_back("theta_q < gamma_qq");
        if (theta_q < gamma_qc) out.push_back("theta_q < gamma_qc");
        if (theta_c < gamma_cc) out.push_back("theta_c < gamma_cc");
        if (theta_c < gamma_qc) out.push_back("theta_c < gamma_qc");
        return out;
    }

    /// Swaps the roles of the two groups (used by symmetry tests).
    two_group_params swapped() const {
        two_group_params s = *this;
        std::swap(s.n_q, s.n_c);
        std::swap(s.a_q, s.a_c);
        std::swap(s.theta_q, s.theta_c);
        std::swap(s.gamma_qq, s.gamma_cc);
        return s;
    }
};

/// Per-firm equilibrium values for each group. The shared denominator of the
/// closed form is kept for diagnostics.
struct group_equilibrium {
    double q_q = 0.0;
    double q_c = 0.0;
    double p_q = 0.0;
    double p_c = 0.0;
    double pi_q = 0.0;
    double pi_c = 0.0;
    double denominator = 0.0;
};

/// Entries of the explicit inverse of the homogeneous FOC matrix
/// (2*theta on the diagonal, gamma elsewhere): diagonal phi, off-diagonal psi.
struct homogeneous_inverse_entries {
    double phi = 0.0;
    double psi = 0.0;
    std::size_t n = 0;
    double theta = 0.0;
    double gamma = 0.0;
};

namespace detail {

/// Inverse entries of the n-by-n matrix with constant diagonal d and constant
/// off-diagonal o. For n == 1 the off-diagonal entry does not exist and is
/// reported absent rather than fabricated.
struct uniform_inverse_entries {
    double diag = 0.0;
    std::optional<double> off;
};

inline uniform_inverse_entries uniform_inverse(double d, double o, std::size_t n,
                                               const std::string& stage) {
    if (n == 1) {
        if (std::abs(d) < 1e-12) {
            throw degenerate_denominator_error(stage, stage + ": diagonal within 1e-12 of zero");
        }
        return {1.0 / d, std::nullopt};
    }
    const double f1 = d - o;
    const double f2 = d + static_cast<double>(n - 1) * o;
    if (std::abs(f1) < 1e-12 || std::abs(f2) < 1e-12) {
        throw degenerate_denominator_error(stage, stage + ": factor within 1e-12 of zero (d-o=" +
                                                      std::to_string(f1) + ", d+(n-1)o=" +
                                                      std::to_string(f2) + ")");
    }
    const double den = f1 * f2;
    return {(d + static_cast<double>(n - 2) * o) / den, -o / den};
}

} // namespace detail

/// Explicit inverse of the homogeneous FOC matrix for n >= 2 firms:
///   phi = (2 theta + (n-2) gamma) / ((2 theta - gamma)(2 theta + (n-1) gamma))
///   psi = -gamma / (same denominator)
inline homogeneous_inverse_entries homogeneous_inverse(double theta, double gamma, std::size_t n) {
    if (n < 2) throw error("homogeneous_inverse: requires n >= 2");
    const auto e = detail::uniform_inverse(2.0 * theta, gamma, n, "homogeneous inverse");
    return {e.diag, *e.off, n, theta, gamma};
}

/// Per-firm equilibrium profit of the homogeneous market as a polynomial in
/// N with phi/psi coefficients, kept as a test target only; algebraically
/// identical to theta * q*^2.
inline double homogeneous_profit_polynomial(double a, double theta, double gamma, std::size_t n) {
    const auto inv = homogeneous_inverse(theta, gamma, n);
    const double phi = inv.phi, psi = inv.psi;
    const double nn = static_cast<double>(n);
    const double poly = -gamma * psi * nn * nn + (2.0 * gamma * psi - gamma * phi - theta * psi) * nn +
                        (-gamma * psi + gamma * phi + theta * psi - theta * phi) + 1.0;
    return a * a * (phi + (nn - 1.0) * psi) * poly;
}

/// Homogeneous-market equilibrium: every firm produces
/// q* = a phi + (N-1) a psi = a / (2 theta + (N-1) gamma) and earns
/// pi* = theta q*^2. Both profit routes (polynomial and FOC identity) are
/// evaluated and cross-asserted; the identity route is the exported value.
inline std::pair<double, double> homogeneous_equilibrium(double a, double theta, double gamma,
                                                         std::size_t n) {
    const auto inv = homogeneous_inverse(theta, gamma, n);
    const double q_star = a * inv.phi + static_cast<double>(n - 1) * a * inv.psi;
    const double pi_star = theta * q_star * q_star;
    const double pi_poly = homogeneous_profit_polynomial(a, theta, gamma, n);
    if (std::abs(pi_poly - pi_star) > 1e-9 * std::max(1.0, std::abs(pi_star))) {
        throw error("homogeneous_equilibrium: profit routes disagree (polynomial " +
                    std::to_string(pi_poly) + " vs identity " + std::to_string(pi_star) + ")");
    }
    return {q_star, pi_star};
}

namespace detail {

/// Shared denominator of the two-group closed form and the absolute sum of
/// its four terms (term cancellation, not absolute smallness, is the failure
/// mode, so degeneracy is judged relative to the term scale).
inline std::pair<double, double> two_group_denominator(const two_group_params& p) {
    const double nq = static_cast<double>(p.n_q);
    const double nc = static_cast<double>(p.n_c);
    const double t1 = nc * nq * (p.gamma_cc * p.gamma_qq - p.gamma_qc * p.gamma_qc);
    const double t2 = nc * p.gamma_cc * (2.0 * p.theta_q - p.gamma_qq);
    const double t3 = nq * p.gamma_qq * (2.0 * p.theta_c - p.gamma_cc);
    const double t4 = (2.0 * p.theta_q - p.gamma_qq) * (2.0 * p.theta_c - p.gamma_cc);
    const double scale = std::abs(t1) + (std::abs(t2) + std::abs(t3)) + std::abs(t4);
    // Summation grouped so that swapping the two groups (which exchanges t2
    // and t3 and leaves t1, t4 unchanged) reproduces the value bit for bit.
    return {t1 + (t2 + t3) + t4, scale};
}

} // namespace detail

/// Two-group Nash equilibrium in closed form.
inline group_equilibrium two_group_equilibrium(const two_group_params& p) {
    const auto [den, scale] = detail::two_group_denominator(p);
    if (scale == 0.0 || std::abs(den) < 1e-12 * scale) {
        throw degenerate_denominator_error(
            "two-group equilibrium",
            "two_group_equilibrium: denominator " + std::to_string(den) +
                " degenerate relative to term scale " + std::to_string(scale));
    }
    const double nq = static_cast<double>(p.n_q);
    const double nc = static_cast<double>(p.n_c);
    const double num_q = p.a_q * ((nc - 1.0) * p.gamma_cc + 2.0 * p.theta_c) - p.a_c * nc * p.gamma_qc;
    const double num_c = p.a_c * ((nq - 1.0) * p.gamma_qq + 2.0 * p.theta_q) - p.a_q * nq * p.gamma_qc;

    group_equilibrium eq;
    eq.denominator = den;
    eq.q_q = num_q / den;
    eq.q_c = num_c / den;
    eq.p_q = p.theta_q * eq.q_q;
    eq.p_c = p.theta_c * eq.q_c;
    eq.pi_q = p.theta_q * eq.q_q * eq.q_q;
    eq.pi_c = p.theta_c * eq.q_c * eq.q_c;

    // Quotient route of the closed form, cross-asserted against the identity
    // route exported above.
    const double pi_q_quot = p.theta_q * (num_q * num_q) / (den * den);
    const double pi_c_quot = p.theta_c * (num_c * num_c) / (den * den);
    if (std::abs(pi_q_quot - eq.pi_q) > 1e-9 * std::max(1.0, std::abs(eq.pi_q)) ||
        std::abs(pi_c_quot - eq.pi_c) > 1e-9 * std::max(1.0, std::abs(eq.pi_c))) {
        throw error("two_group_equilibrium: profit routes disagree");
    }
    return eq;
}

/// Entries of the block-patterned inverse of the two-group FOC matrix.
/// The within-group off-diagonal entries do not exist for singleton groups
/// and are reported absent in that case.
struct block_inverse_entries {
    double omega_qq = 0.0;
    std::optional<double> varpi_qq;
    double omega_cc = 0.0;
    std::optional<double> varpi_cc;
    double omega_qc = 0.0;
};

/// Schur-complement inversion of the two-group FOC matrix, staged as:
/// quantum block inverse -> Schur complement of the classical block ->
/// Schur complement inverse -> assembled entries.
inline block_inverse_entries block_inverse(const two_group_params& p) {
    const double nq = static_cast<double>(p.n_q);
    const double nc = static_cast<double>(p.n_c);

    const auto qq = detail::uniform_inverse(2.0 * p.theta_q, p.gamma_qq, p.n_q,
                                            "quantum block inverse");
    const double row_sum_qq = qq.diag + (nq - 1.0) * qq.off.value_or(0.0);

    // Schur complement of the classical block: constant-diagonal pattern.
    const double coupling = p.gamma_qc * p.gamma_qc * nq * row_sum_qq;
    const double schur_diag = 2.0 * p.theta_c - coupling;
    const double schur_off = p.gamma_cc - coupling;

    const auto cc = detail::uniform_inverse(schur_diag, schur_off, p.n_c,
                                            "schur complement inverse");
    const double row_sum_cc = cc.diag + (nc - 1.0) * cc.off.value_or(0.0);

    block_inverse_entries out;
    out.omega_cc = cc.diag;
    out.varpi_cc = cc.off;
    out.omega_qc = -p.gamma_qc * row_sum_qq * row_sum_cc;
    const double correction = nc * p.gamma_qc * p.gamma_qc * row_sum_qq * row_sum_qq * row_sum_cc;
    out.omega_qq = qq.diag + correction;
    if (qq.off) out.varpi_qq = *qq.off + correction;
    return out;
}

/// Expands the five block-inverse entries into the full N-by-N matrix
/// (test oracle for the identity-product invariant).
inline dense_matrix assemble_block_inverse(const two_group_params& p,
                                           const block_inverse_entries& b) {
    const std::size_t n = p.n_q + p.n_c;
    dense_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool iq = i < p.n_q;
        for (std::size_t j = 0; j < n; ++j) {
            const bool jq = j < p.n_q;
            if (iq != jq) {
                m.at(i, j) = b.omega_qc;
            } else if (i == j) {
                m.at(i, j) = iq ? b.omega_qq : b.omega_cc;
            } else {
                const auto& off = iq ? b.varpi_qq : b.varpi_cc;
                if (!off) throw error("assemble_block_inverse: missing within-group entry");
                m.at(i, j) = *off;
            }
        }
    }
    return m;
}

/// Embeds two-group parameters into the general N-firm model: quantum firms
/// first, classical firms after.
inline market::market_params expand_two_group(const two_group_params& p) {
    const std::size_t n = p.n_q + p.n_c;
    std::vector<double> a(n), theta(n);
    dense_matrix gamma(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool iq = i < p.n_q;
        a[i] = iq ? p.a_q : p.a_c;
        theta[i] = iq ? p.theta_q : p.theta_c;
        for (std::size_t j = 0; j < n; ++j) {
            const bool jq = j < p.n_q;
            if (i == j) {
                gamma.at(i, j) = theta[i];
            } else if (iq != jq) {
                gamma.at(i, j) = p.gamma_qc;
            } else {
                gamma.at(i, j) = iq ? p.gamma_qq : p.gamma_cc;
            }
        }
    }
    return market::market_params::make(std::move(a), std::move(theta), std::move(gamma));
}

/// Slack of the quantum-profitability condition
///   gamma_qc / a_q < (gamma_cc + (2 theta_c - gamma_cc)/n_c) / a_c,
/// returned as RHS - LHS; positive means the quantum group's equilibrium
/// profit is strictly positive under that condition.
inline double profitability_margin(const two_group_params& p) {
    const double rhs =
        (p.gamma_cc + (2.0 * p.theta_c - p.gamma_cc) / static_cast<double>(p.n_c)) / p.a_c;
    const double lhs = p.gamma_qc / p.a_q;
    return rhs - lhs;
}

} // namespace qcournot::closed_form
