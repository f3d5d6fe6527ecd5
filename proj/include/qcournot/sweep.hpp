#pragma once

// Sweep tables for the three figure presets, the threshold report, the
// single-point equilibrium report, and the CSV writer. Rows are evaluated in
// grid order; rows whose evaluation leaves the model's domain are emitted
// with a nonzero status flag instead of aborting the sweep.
//
// CSV dialect: '#'-prefixed metadata lines (tool version + canonical config
// echo), a header row, comma separators, values in scientific notation with
// 17 significant digits, status flags as plain integers.

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qcournot/config.hpp"
#include "qcournot/energy.hpp"
#include "qcournot/hardware.hpp"
#include "qcournot/market.hpp"
#include "qcournot/verify.hpp"

namespace qcournot::cli {

// Row status flags.
inline constexpr int row_ok = 0;
inline constexpr int row_domain_error = 1;
inline constexpr int row_degenerate = 2;

struct sweep_row {
    std::vector<double> values;
    int status = row_ok;
};

struct sweep_table {
    std::vector<std::string> columns;  // excludes the trailing status column
    std::vector<sweep_row> rows;
    std::vector<std::pair<std::string, std::string>> metadata;
};

inline std::string format_value(double v) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

inline void write_csv(const sweep_table& t, std::ostream& os) {
    for (const auto& [k, v] : t.metadata) os << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
        os << t.columns[i] << ",";
    }
    os << "status\n";
    for (const auto& row : t.rows) {
        for (double v : row.values) os << format_value(v) << ",";
        os << row.status << "\n";
    }
}

inline std::string render_csv(const sweep_table& t) {
    std::ostringstream os;
    write_csv(t, os);
    return os.str();
}

inline std::vector<std::pair<std::string, std::string>> make_metadata(const run_config& cfg,
                                                                      const std::string& command) {
    return {{"tool", tool_version},
            {"command", command},
            {"preset", cfg.preset_name.empty() ? "custom" : cfg.preset_name},
            {"config", echo_json(cfg).dump()}};
}

// ---------------------------------------------------------------------------
// Energy-cap sweep (profit comparison under a shared budget)
// ---------------------------------------------------------------------------

inline sweep_table sweep_energy_constraint(const run_config& cfg) {
    if (!cfg.energy) throw config_error("sweep-energy requires an energy section");
    if (!cfg.sweep || cfg.sweep->variable != "cap_E") {
        throw config_error("sweep-energy requires sweep.variable = cap_E");
    }
    const auto& es = *cfg.energy;
    const auto star = closed_form::two_group_equilibrium(cfg.market);
    const auto [pi_q_star, pi_c_star] = energy::group_profits(cfg.market, star.q_q, star.q_c);

    sweep_table t;
    t.metadata = make_metadata(cfg, "sweep-energy");
    t.columns = {"E",      "q_q_E",  "q_c_E",  "q_q_F",     "q_c_F",
                 "pi_q_F", "pi_c_F", "pi_q_star", "pi_c_star"};
    for (double e : cfg.sweep->grid.values()) {
        sweep_row row;
        try {
            const auto c = energy::solve_constrained_equilibrium(cfg.market, es.model_q,
                                                                 es.model_c, e, es.mode);
            row.values = {e,      c.cap_q, c.cap_c, c.q_q,      c.q_c,
                          c.pi_q, c.pi_c,  pi_q_star, pi_c_star};
        } catch (const domain_error&) {
            row.values.assign(t.columns.size(), std::nan(""));
            row.values[0] = e;
            row.status = row_domain_error;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Ratio sweep (equilibrium energy per group vs n_q / n_c)
// ---------------------------------------------------------------------------

/// Energy columns evaluate each group's curve at its aggregate equilibrium
/// output (n_q q_q*, n_c q_c*), i.e. the energy bill of the whole group's
/// production at the Nash point.
inline sweep_table sweep_ratio(const run_config& cfg) {
    if (!cfg.energy) throw config_error("sweep-ratio requires an energy section");
    if (!cfg.sweep || cfg.sweep->variable != "n_q") {
        throw config_error("sweep-ratio requires sweep.variable = n_q");
    }
    const auto& es = *cfg.energy;

    sweep_table t;
    t.metadata = make_metadata(cfg, "sweep-ratio");
    t.columns = {"n_q_over_n_c", "E_q", "E_c"};
    for (double value : cfg.sweep->grid.values()) {
        const auto n_q = static_cast<std::size_t>(std::llround(value));
        closed_form::two_group_params p = cfg.market;
        p.n_q = std::max<std::size_t>(1, n_q);
        const double ratio = static_cast<double>(p.n_q) / static_cast<double>(p.n_c);
        sweep_row row;
        try {
            const auto star = closed_form::two_group_equilibrium(p);
            const double group_q = static_cast<double>(p.n_q) * star.q_q;
            const double group_c = static_cast<double>(p.n_c) * star.q_c;
            row.values = {ratio, energy::power(es.model_q, group_q),
                          energy::power(es.model_c, group_c)};
        } catch (const domain_error&) {
            row.values = {ratio, std::nan(""), std::nan("")};
            row.status = row_domain_error;
        } catch (const degenerate_denominator_error&) {
            row.values = {ratio, std::nan(""), std::nan("")};
            row.status = row_degenerate;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Scale sweep (per-company equilibrium energy on each platform vs a)
// ---------------------------------------------------------------------------

inline sweep_table sweep_scale(const run_config& cfg) {
    if (!cfg.hardware) throw config_error("sweep-scale requires a hardware section");
    if (!cfg.sweep || cfg.sweep->variable != "a") {
        throw config_error("sweep-scale requires sweep.variable = a");
    }
    const auto& hc = cfg.hardware->constants;
    const auto rydberg = hardware::hardware_model(hardware::hardware_kind::rydberg, hc);
    const auto ion = hardware::hardware_model(hardware::hardware_kind::ion_trap, hc);
    const auto classical = hardware::hardware_model(cfg.hardware->classical_kind, hc);

    sweep_table t;
    t.metadata = make_metadata(cfg, "sweep-scale");
    t.columns = {"a", "q_q_star", "q_c_star", "E_rydberg", "E_ion", "E_classical"};
    for (double a : cfg.sweep->grid.values()) {
        closed_form::two_group_params p = cfg.market;
        p.a_q = p.a_c = a;
        sweep_row row;
        row.values.assign(t.columns.size(), std::nan(""));
        row.values[0] = a;
        try {
            const auto star = closed_form::two_group_equilibrium(p);
            row.values[1] = star.q_q;
            row.values[2] = star.q_c;
            const auto energy_or_flag = [&](const energy::energy_model& m, double q,
                                            std::size_t col) {
                try {
                    row.values[col] = energy::power(m, q);
                } catch (const domain_error&) {
                    row.status = row_domain_error;
                }
            };
            energy_or_flag(rydberg, star.q_q, 3);
            energy_or_flag(ion, star.q_q, 4);
            energy_or_flag(classical, star.q_c, 5);
        } catch (const degenerate_denominator_error&) {
            row.status = row_degenerate;
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Threshold report
// ---------------------------------------------------------------------------

struct threshold_report {
    std::optional<hardware::critical_scale_result> ion;
    std::optional<hardware::critical_scale_result> rydberg;
    std::string ion_failure;      // explored bracket, when no crossing was found
    std::string rydberg_failure;

    bool complete() const { return ion.has_value() && rydberg.has_value(); }
};

/// Locates the critical scale a* for each quantum platform against the
/// configured classical platform. A config-supplied bracket is honored
/// strictly; otherwise the search starts on [1e6, 1e16] and expands the upper
/// end by decades.
inline threshold_report find_threshold(const run_config& cfg) {
    if (!cfg.hardware) throw config_error("threshold requires a hardware section");
    const auto& hw = *cfg.hardware;

    threshold_report rep;
    const auto locate = [&](hardware::hardware_kind quantum)
        -> std::pair<std::optional<hardware::critical_scale_result>, std::string> {
        try {
            if (hw.bracket) {
                return {hardware::critical_scale(cfg.market, quantum, hw.classical_kind,
                                                 hw.bracket->first, hw.bracket->second,
                                                 hw.constants),
                        {}};
            }
            return {hardware::critical_scale_auto(cfg.market, quantum, hw.classical_kind, 1e6,
                                                  1e16, hw.constants),
                    {}};
        } catch (const no_sign_change_error& e) {
            return {std::nullopt, e.what()};
        }
    };
    std::tie(rep.ion, rep.ion_failure) = locate(hardware::hardware_kind::ion_trap);
    std::tie(rep.rydberg, rep.rydberg_failure) = locate(hardware::hardware_kind::rydberg);
    return rep;
}

inline sweep_table threshold_table(const run_config& cfg, const threshold_report& rep) {
    sweep_table t;
    t.metadata = make_metadata(cfg, "threshold");
    t.columns = {"a_star_ion", "residual_ion", "a_star_rydberg", "residual_rydberg"};
    sweep_row row;
    row.values = {rep.ion ? rep.ion->a_star : std::nan(""),
                  rep.ion ? rep.ion->residual : std::nan(""),
                  rep.rydberg ? rep.rydberg->a_star : std::nan(""),
                  rep.rydberg ? rep.rydberg->residual : std::nan("")};
    if (!rep.complete()) row.status = row_domain_error;
    t.rows.push_back(std::move(row));
    return t;
}

// ---------------------------------------------------------------------------
// Single-point equilibrium report
// ---------------------------------------------------------------------------

struct equilibrium_report {
    closed_form::group_equilibrium eq;
    double oracle_residual = 0.0;  // closed form vs pivoted solve, relative
    bool all_nonnegative = false;
    double dominance_margin = 0.0;
    std::vector<std::string> warnings;
};

inline equilibrium_report run_equilibrium(const run_config& cfg) {
    equilibrium_report rep;
    rep.eq = closed_form::two_group_equilibrium(cfg.market);
    const auto expanded = closed_form::expand_two_group(cfg.market);
    const auto oracle = market::solve_equilibrium(expanded);

    const std::size_t n = expanded.n;
    std::vector<double> q(n), pr(n), pi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool iq = i < cfg.market.n_q;
        q[i] = iq ? rep.eq.q_q : rep.eq.q_c;
        pr[i] = iq ? rep.eq.p_q : rep.eq.p_c;
        pi[i] = iq ? rep.eq.pi_q : rep.eq.pi_c;
    }
    rep.oracle_residual = std::max({verify::relative_field_error(q, oracle.quantities),
                                    verify::relative_field_error(pr, oracle.prices),
                                    verify::relative_field_error(pi, oracle.profits)});
    rep.all_nonnegative = rep.eq.q_q >= 0.0 && rep.eq.q_c >= 0.0 && rep.eq.p_q >= 0.0 &&
                          rep.eq.p_c >= 0.0;
    rep.dominance_margin = market::is_diagonally_dominant(market::build_gamma(expanded)).margin;
    rep.warnings = cfg.market.warnings();
    return rep;
}

inline std::string render_report(const run_config& cfg, const equilibrium_report& rep) {
    std::ostringstream os;
    os << "market: n_q=" << cfg.market.n_q << " n_c=" << cfg.market.n_c << "\n";
    os << "q_q*  = " << format_value(rep.eq.q_q) << "\n";
    os << "q_c*  = " << format_value(rep.eq.q_c) << "\n";
    os << "p_q*  = " << format_value(rep.eq.p_q) << "\n";
    os << "p_c*  = " << format_value(rep.eq.p_c) << "\n";
    os << "pi_q* = " << format_value(rep.eq.pi_q) << "\n";
    os << "pi_c* = " << format_value(rep.eq.pi_c) << "\n";
    os << "denominator     = " << format_value(rep.eq.denominator) << "\n";
    os << "all_nonnegative = " << (rep.all_nonnegative ? "true" : "false") << "\n";
    os << "dominance margin = " << format_value(rep.dominance_margin) << "\n";
    os << "oracle residual (closed form vs linear solve) = " << format_value(rep.oracle_residual)
       << "\n";
    for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
    return os.str();
}

} // namespace qcournot::cli
