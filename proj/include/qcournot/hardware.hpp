#pragma once

// Physical energy-cost models for Rydberg-atom, trapped-ion, and classical
// HPC computation, the critical computation scale a* at which the quantum
// side of the market becomes energy-advantaged, and the large-n asymptotic
// quantity approximations.
//
// The identification made throughout: a firm's computation scale is its
// equilibrium output q*, so "energy at equilibrium" plugs q* into the
// hardware curve of that firm's platform.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "qcournot/closed_form.hpp"
#include "qcournot/energy.hpp"
#include "qcournot/errors.hpp"
#include "qcournot/numerics.hpp"

namespace qcournot::hardware {

enum class hardware_kind { rydberg, ion_trap, classical_hpc };

inline const char* to_string(hardware_kind k) {
    switch (k) {
        case hardware_kind::rydberg: return "rydberg";
        case hardware_kind::ion_trap: return "ion_trap";
        default: return "classical_hpc";
    }
}

/// Shipped defaults, all overridable via configuration:
///   Rydberg:        E(N) = (log2 N)^2 * 1.5e4 J   (15 kJ per two-qubit gate,
///                   n^2 gates for an n-qubit algorithm, N = 2^n)
///   Ion trap:       E(N) = (log2 N)^2 * 0.0175 J
///   Classical HPC:  E(N) = N * 4e-10 J            (20 GFLOPS per watt)
struct hardware_constants {
    double alpha = 1.0;
    double mu = 2.0;
    double beta_rydberg = 1.5e4;
    double beta_ion = 0.0175;
    double beta_classical = 4e-10;
};

inline energy::energy_model hardware_model(hardware_kind kind,
                                           const hardware_constants& c = {}) {
    switch (kind) {
        case hardware_kind::rydberg:
            return {energy::energy_kind::log_power, c.beta_rydberg, c.mu};
        case hardware_kind::ion_trap:
            return {energy::energy_kind::log_power, c.beta_ion, c.mu};
        default:
            return {energy::energy_kind::power_law, c.beta_classical, c.alpha};
    }
}

/// Energy in Joules to run one algorithm of scale N on the given platform.
/// Identical by construction to power(hardware_model(kind), N).
inline double algorithm_energy(hardware_kind kind, double scale_n,
                               const hardware_constants& c = {}) {
    return energy::power(hardware_model(kind, c), scale_n);
}

struct critical_scale_result {
    double a_star = 0.0;
    double residual = 0.0;  // |E_q - E_c| / max(E_q, E_c) at a_star
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
};

namespace detail {

/// E_q(a) - E_c(a) at the two-group equilibrium with a_q = a_c = a.
inline double energy_gap_at_scale(closed_form::two_group_params p, hardware_kind quantum,
                                  hardware_kind classical, const hardware_constants& c,
                                  double a) {
    p.a_q = a;
    p.a_c = a;
    const auto [e_q, e_c] =
        energy::equilibrium_energy(p, hardware_model(quantum, c), hardware_model(classical, c));
    return e_q - e_c;
}

inline critical_scale_result locate_crossing(const closed_form::two_group_params& p,
                                             hardware_kind quantum, hardware_kind classical,
                                             const hardware_constants& c, double a_lo,
                                             double a_hi) {
    // The objective spans many orders of magnitude in a, so the search runs
    // in log10-space of the argument.
    const auto f = [&](double log_a) {
        return energy_gap_at_scale(p, quantum, classical, c, std::pow(10.0, log_a));
    };
    const auto br = numerics::make_bracket(f, std::log10(a_lo), std::log10(a_hi));
    const double log_star = numerics::bisect(f, br, 1e-14, 200);

    critical_scale_result out;
    out.a_star = std::pow(10.0, log_star);
    out.bracket_lo = a_lo;
    out.bracket_hi = a_hi;
    closed_form::two_group_params at = p;
    at.a_q = at.a_c = out.a_star;
    const auto [e_q, e_c] =
        energy::equilibrium_energy(at, hardware_model(quantum, c), hardware_model(classical, c));
    out.residual = std::abs(e_q - e_c) / std::max(e_q, e_c);
    if (!(out.residual <= 1e-6)) {
        throw no_convergence_error(200, "critical_scale: crossing residual " +
                                            std::to_string(out.residual) + " above 1e-6");
    }
    return out;
}

} // namespace detail

/// Locates the scale a* with E_q(a*) = E_c(a*) inside [a_lo, a_hi], treating
/// a_q = a_c = a as the swept symbol. The bracket is respected strictly;
/// throws no_sign_change_error when it does not straddle a crossing.
inline critical_scale_result critical_scale(const closed_form::two_group_params& p,
                                            hardware_kind quantum, hardware_kind classical,
                                            double a_lo, double a_hi,
                                            const hardware_constants& c = {}) {
    if (!(a_lo > 0.0 && a_hi > a_lo)) throw error("critical_scale: requires 0 < a_lo < a_hi");
    return detail::locate_crossing(p, quantum, classical, c, a_lo, a_hi);
}

/// Like critical_scale, but widens the upper end of the bracket by factors of
/// 10 (at most `max_expansions` times) until a sign change appears, then
/// bisects. Throws no_sign_change_error with the fully explored bracket when
/// the expansion budget runs out.
inline critical_scale_result critical_scale_auto(const closed_form::two_group_params& p,
                                                 hardware_kind quantum, hardware_kind classical,
                                                 double a_lo, double a_hi_initial,
                                                 const hardware_constants& c = {},
                                                 std::size_t max_expansions = 30) {
    if (!(a_lo > 0.0 && a_hi_initial > a_lo)) {
        throw error("critical_scale_auto: requires 0 < a_lo < a_hi");
    }
    const double f_lo = detail::energy_gap_at_scale(p, quantum, classical, c, a_lo);
    double hi = a_hi_initial;
    for (std::size_t i = 0; i <= max_expansions; ++i) {
        const double f_hi = detail::energy_gap_at_scale(p, quantum, classical, c, hi);
        if (f_lo * f_hi <= 0.0) {
            return detail::locate_crossing(p, quantum, classical, c, a_lo, hi);
        }
        hi *= 10.0;
    }
    throw no_sign_change_error(a_lo, hi / 10.0,
                               "critical_scale_auto: no crossing in [" + std::to_string(a_lo) +
                                   ", " + std::to_string(hi / 10.0) + "] after " +
                                   std::to_string(max_expansions) + " expansions");
}

/// Large-n approximations of the equilibrium quantities at a_q = a_c = a:
///   q_q ~ a (gamma_cc - gamma_qc) / ((gamma_cc gamma_qq - gamma_qc^2) n_q)
///   q_c ~ a (gamma_qq - gamma_qc) / ((gamma_cc gamma_qq - gamma_qc^2) n_c)
inline std::pair<double, double> asymptotic_quantities(const closed_form::two_group_params& p,
                                                       double a) {
    const double prod = p.gamma_cc * p.gamma_qq;
    const double sq = p.gamma_qc * p.gamma_qc;
    const double den = prod - sq;
    if (std::abs(den) < 1e-12 * (std::abs(prod) + sq)) {
        throw degenerate_denominator_error(
            "asymptotic quantities",
            "asymptotic_quantities: gamma_cc*gamma_qq - gamma_qc^2 degenerate");
    }
    const double q_q = a * (p.gamma_cc - p.gamma_qc) / (den * static_cast<double>(p.n_q));
    const double q_c = a * (p.gamma_qq - p.gamma_qc) / (den * static_cast<double>(p.n_c));
    return {q_q, q_c};
}

} // namespace qcournot::hardware
