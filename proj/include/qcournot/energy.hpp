#pragma once

// Energy cost curves, regulatory caps, the cap-induced quantity thresholds,
// the shifted (constrained) equilibrium with its profits, and equilibrium
// energy consumption.
//
// Two curve shapes are supported:
//   log_power:  P(q) = beta * (log2 q)^mu      (quantum data centers)
//   power_law:  P(q) = beta * q^alpha          (classical data centers)

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "qcournot/closed_form.hpp"
#include "qcournot/errors.hpp"

namespace qcournot::energy {

enum class energy_kind { log_power, power_law };

inline const char* to_string(energy_kind k) {
    return k == energy_kind::log_power ? "log_power" : "power_law";
}

/// A power-law or log-power energy curve. `exponent` is mu for log_power and
/// alpha for power_law; beta carries the energy units (Joules in the hardware
/// presets, abstract otherwise).
struct energy_model {
    energy_kind kind = energy_kind::power_law;
    double beta = 1.0;
    double exponent = 1.0;

    void validate() const {
        if (!(beta > 0.0)) throw error("energy_model: beta must be positive");
        if (!(exponent > 0.0)) throw error("energy_model: exponent must be positive");
    }
};

/// Energy drawn per unit time at output q. A log-power curve is only
/// meaningful for q > 1: at or below 1 the logarithm is nonpositive and the
/// curve stops denoting a positive power draw.
inline double power(const energy_model& m, double q) {
    m.validate();
    if (m.kind == energy_kind::log_power) {
        if (!(q > 1.0)) {
            throw domain_error("power: log-power curve requires quantity > 1, got " +
                               std::to_string(q));
        }
        return m.beta * std::pow(std::log2(q), m.exponent);
    }
    if (!(q > 0.0)) {
        throw domain_error("power: power-law curve requires quantity > 0, got " +
                           std::to_string(q));
    }
    return m.beta * std::pow(q, m.exponent);
}

/// Largest output compatible with an energy budget E: the exact inverse of
/// power(). log_power -> 2^((E/beta)^(1/mu)); power_law -> (E/beta)^(1/alpha).
inline double quantity_cap(const energy_model& m, double e) {
    m.validate();
    if (!(e > 0.0)) {
        throw domain_error("quantity_cap: energy budget must be positive, got " +
                           std::to_string(e));
    }
    double cap;
    if (m.kind == energy_kind::log_power) {
        cap = std::exp2(std::pow(e / m.beta, 1.0 / m.exponent));
    } else {
        cap = std::pow(e / m.beta, 1.0 / m.exponent);
    }
    if (!std::isfinite(cap)) {
        throw domain_error("quantity_cap: cap overflows double for E = " + std::to_string(e));
    }
    return cap;
}

enum class clamp_mode { paper_clamp, iterated_best_response };

inline const char* to_string(clamp_mode m) {
    return m == clamp_mode::paper_clamp ? "paper_clamp" : "iterated_best_response";
}

/// Per-firm group profits with every same-group rival producing the same
/// quantity:
///   pi_q = a_q q_q - n_c gamma_qc q_c q_q - (theta_q + (n_q-1) gamma_qq) q_q^2
/// and symmetrically for the classical group.
inline std::pair<double, double> group_profits(const closed_form::two_group_params& p, double q_q,
                                               double q_c) {
    const double nq = static_cast<double>(p.n_q);
    const double nc = static_cast<double>(p.n_c);
    const double pi_q = p.a_q * q_q - nc * p.gamma_qc * q_c * q_q -
                        (p.theta_q + (nq - 1.0) * p.gamma_qq) * q_q * q_q;
    const double pi_c = p.a_c * q_c - nq * p.gamma_qc * q_c * q_q -
                        (p.theta_c + (nc - 1.0) * p.gamma_cc) * q_c * q_c;
    return {pi_q, pi_c};
}

/// Equilibrium under an energy cap. `mode` records how the point was found.
struct constrained_equilibrium {
    double q_q = 0.0;
    double q_c = 0.0;
    double pi_q = 0.0;
    double pi_c = 0.0;
    double cap_q = 0.0;  // quantity threshold q_q^E
    double cap_c = 0.0;  // quantity threshold q_c^E
    bool cap_binding_q = false;
    bool cap_binding_c = false;
    clamp_mode mode = clamp_mode::paper_clamp;
};

/// Applies the same energy budget E to both groups.
///
/// paper_clamp: if the unconstrained equilibrium violates either cap, the
/// operating point shifts to the threshold pair (q_q^E, q_c^E); otherwise the
/// unconstrained equilibrium stands. This is the two-point choice rule the
/// profit formulas above are written for; it is not in general a Nash
/// equilibrium of the capped game.
///
/// iterated_best_response: alternates box-constrained best responses
///   q_i <- clamp((a_i - sum_{j != i} gamma_ij q_j) / (2 theta_i), 0, q_i^E)
/// until the largest change drops below 1e-10 (at most 10,000 rounds); the
/// fixed point satisfies complementarity (interior FOC or active bound).
inline constrained_equilibrium solve_constrained_equilibrium(
    const closed_form::two_group_params& p, const energy_model& model_q,
    const energy_model& model_c, double e, clamp_mode mode) {
    p.validate();
    if (!(e > 0.0)) throw domain_error("constrained equilibrium: requires E > 0");

    constrained_equilibrium out;
    out.mode = mode;
    out.cap_q = quantity_cap(model_q, e);
    out.cap_c = quantity_cap(model_c, e);

    const auto star = closed_form::two_group_equilibrium(p);

    if (mode == clamp_mode::paper_clamp) {
        if (star.q_q <= out.cap_q && star.q_c <= out.cap_c) {
            out.q_q = star.q_q;
            out.q_c = star.q_c;
        } else {
            out.q_q = out.cap_q;
            out.q_c = out.cap_c;
        }
    } else {
        const double nq = static_cast<double>(p.n_q);
        const double nc = static_cast<double>(p.n_c);
        double q_q = 0.0, q_c = 0.0;
        const std::size_t max_rounds = 10000;
        bool converged = false;
        for (std::size_t round = 0; round < max_rounds; ++round) {
            const double br_q = (p.a_q - (nq - 1.0) * p.gamma_qq * q_q - nc * p.gamma_qc * q_c) /
                                (2.0 * p.theta_q);
            const double new_q = std::clamp(br_q, 0.0, out.cap_q);
            const double br_c = (p.a_c - (nc - 1.0) * p.gamma_cc * q_c - nq * p.gamma_qc * new_q) /
                                (2.0 * p.theta_c);
            const double new_c = std::clamp(br_c, 0.0, out.cap_c);
            const double change = std::max(std::abs(new_q - q_q), std::abs(new_c - q_c));
            q_q = new_q;
            q_c = new_c;
            if (change < 1e-10) {
                converged = true;
                break;
            }
        }
        if (!converged) {
            throw no_convergence_error(max_rounds,
                                       "constrained equilibrium: best-response iteration did not "
                                       "converge within 10000 rounds");
        }
        out.q_q = q_q;
        out.q_c = q_c;
    }

    const auto [pi_q, pi_c] = group_profits(p, out.q_q, out.q_c);
    out.pi_q = pi_q;
    out.pi_c = pi_c;
    out.cap_binding_q = std::abs(out.q_q - out.cap_q) <= 1e-9 * out.cap_q;
    out.cap_binding_c = std::abs(out.q_c - out.cap_c) <= 1e-9 * out.cap_c;
    return out;
}

/// Per-company energy consumption at the unconstrained equilibrium.
inline std::pair<double, double> equilibrium_energy(const closed_form::two_group_params& p,
                                                    const energy_model& model_q,
                                                    const energy_model& model_c) {
    const auto star = closed_form::two_group_equilibrium(p);
    if (model_q.kind == energy_kind::log_power && !(star.q_q > 1.0)) {
        throw domain_error("equilibrium_energy: quantum equilibrium quantity " +
                           std::to_string(star.q_q) + " is <= 1, outside the log-power domain");
    }
    if (model_q.kind == energy_kind::power_law && !(star.q_q > 0.0)) {
        throw domain_error("equilibrium_energy: quantum equilibrium quantity " +
                           std::to_string(star.q_q) + " is <= 0");
    }
    if (model_c.kind == energy_kind::log_power && !(star.q_c > 1.0)) {
        throw domain_error("equilibrium_energy: classical equilibrium quantity " +
                           std::to_string(star.q_c) + " is <= 1, outside the log-power domain");
    }
    if (model_c.kind == energy_kind::power_law && !(star.q_c > 0.0)) {
        throw domain_error("equilibrium_energy: classical equilibrium quantity " +
                           std::to_string(star.q_c) + " is <= 0");
    }
    return {power(model_q, star.q_q), power(model_c, star.q_c)};
}

} // namespace qcournot::energy
