#pragma once

// JSON run configuration and the three figure presets. A config names the
// market, optionally an energy section (cap sweeps), a hardware section
// (platform constants, threshold brackets), and a sweep grid. The schema is
// documented in docs/config.md with annotated examples under configs/.

#include <cstddef>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcournot/closed_form.hpp"
#include "qcournot/energy.hpp"
#include "qcournot/errors.hpp"
#include "qcournot/hardware.hpp"

namespace qcournot::cli {

inline constexpr const char* tool_version = "qcournot 0.1.0";

struct energy_section {
    energy::energy_model model_q;
    energy::energy_model model_c;
    double cap_e = 1.0;
    energy::clamp_mode mode = energy::clamp_mode::paper_clamp;
};

struct hardware_section {
    hardware::hardware_kind quantum_kind = hardware::hardware_kind::ion_trap;
    hardware::hardware_kind classical_kind = hardware::hardware_kind::classical_hpc;
    hardware::hardware_constants constants;
    std::optional<std::pair<double, double>> bracket;  // threshold search bracket, strict
};

enum class grid_kind { linear, log10 };

struct grid_spec {
    grid_kind kind = grid_kind::linear;
    double start = 0.0;
    double stop = 1.0;
    std::size_t points = 2;

    void validate() const {
        if (points < 2) throw config_error("sweep.grid.points must be >= 2");
        if (!(stop > start)) throw config_error("sweep.grid requires stop > start");
        if (kind == grid_kind::log10 && !(start > 0.0)) {
            throw config_error("sweep.grid: log grids require positive endpoints");
        }
    }

    std::vector<double> values() const {
        validate();
        std::vector<double> out(points);
        if (kind == grid_kind::linear) {
            const double step = (stop - start) / static_cast<double>(points - 1);
            for (std::size_t i = 0; i < points; ++i)
                out[i] = start + static_cast<double>(i) * step;
        } else {
            const double lo = std::log10(start), hi = std::log10(stop);
            const double step = (hi - lo) / static_cast<double>(points - 1);
            for (std::size_t i = 0; i < points; ++i)
                out[i] = std::pow(10.0, lo + static_cast<double>(i) * step);
        }
        out.back() = stop;
        return out;
    }
};

struct sweep_section {
    std::string variable;  // one of: cap_E, n_q, a
    grid_spec grid;
};

struct run_config {
    closed_form::two_group_params market;
    std::optional<energy_section> energy;
    std::optional<hardware_section> hardware;
    std::optional<sweep_section> sweep;
    std::string output_path = "sweep.csv";
    std::string preset_name;  // empty for hand-written configs
};

// ---------------------------------------------------------------------------
// JSON parsing
// ---------------------------------------------------------------------------

namespace detail {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key,
                                     const std::string& context) {
    if (!j.is_object() || !j.contains(key)) {
        throw config_error("missing field '" + context + key + "'");
    }
    return j.at(key);
}

inline double require_number(const nlohmann::json& j, const char* key,
                             const std::string& context) {
    const auto& v = require(j, key, context);
    if (!v.is_number()) throw config_error("field '" + context + key + "' must be a number");
    return v.get<double>();
}

inline std::size_t require_count(const nlohmann::json& j, const char* key,
                                 const std::string& context) {
    const auto& v = require(j, key, context);
    if (!v.is_number_unsigned()) {
        throw config_error("field '" + context + key + "' must be a nonnegative integer");
    }
    return v.get<std::size_t>();
}

inline std::string require_string(const nlohmann::json& j, const char* key,
                                  const std::string& context) {
    const auto& v = require(j, key, context);
    if (!v.is_string()) throw config_error("field '" + context + key + "' must be a string");
    return v.get<std::string>();
}

inline energy::energy_model parse_energy_model(const nlohmann::json& j,
                                               const std::string& context) {
    energy::energy_model m;
    const std::string kind = require_string(j, "kind", context);
    if (kind == "log_power") {
        m.kind = energy::energy_kind::log_power;
    } else if (kind == "power_law") {
        m.kind = energy::energy_kind::power_law;
    } else {
        throw config_error("field '" + context + "kind' must be log_power or power_law");
    }
    m.beta = require_number(j, "beta", context);
    m.exponent = require_number(j, "exponent", context);
    try {
        m.validate();
    } catch (const error& e) {
        throw config_error(context + ": " + e.what());
    }
    return m;
}

inline hardware::hardware_kind parse_hardware_kind(const std::string& s,
                                                   const std::string& context) {
    if (s == "rydberg") return hardware::hardware_kind::rydberg;
    if (s == "ion_trap") return hardware::hardware_kind::ion_trap;
    if (s == "classical_hpc") return hardware::hardware_kind::classical_hpc;
    throw config_error("field '" + context + "' must be rydberg, ion_trap, or classical_hpc");
}

} // namespace detail

inline run_config parse_config(const nlohmann::json& j) {
    using detail::parse_energy_model;
    using detail::require;
    using detail::require_count;
    using detail::require_number;
    using detail::require_string;

    run_config cfg;
    const auto& m = require(j, "market", "");
    cfg.market.n_q = require_count(m, "n_q", "market.");
    cfg.market.n_c = require_count(m, "n_c", "market.");
    cfg.market.a_q = require_number(m, "a_q", "market.");
    cfg.market.a_c = require_number(m, "a_c", "market.");
    cfg.market.theta_q = require_number(m, "theta_q", "market.");
    cfg.market.theta_c = require_number(m, "theta_c", "market.");
    cfg.market.gamma_qq = require_number(m, "gamma_qq", "market.");
    cfg.market.gamma_cc = require_number(m, "gamma_cc", "market.");
    cfg.market.gamma_qc = require_number(m, "gamma_qc", "market.");
    try {
        cfg.market.validate();
    } catch (const error& e) {
        throw config_error(std::string("market: ") + e.what());
    }

    if (j.contains("energy")) {
        const auto& e = j.at("energy");
        energy_section es;
        es.model_q = parse_energy_model(require(e, "model_q", "energy."), "energy.model_q.");
        es.model_c = parse_energy_model(require(e, "model_c", "energy."), "energy.model_c.");
        if (e.contains("cap_E")) es.cap_e = require_number(e, "cap_E", "energy.");
        if (e.contains("mode")) {
            const std::string mode = require_string(e, "mode", "energy.");
            if (mode == "paper_clamp") {
                es.mode = energy::clamp_mode::paper_clamp;
            } else if (mode == "iterated_best_response") {
                es.mode = energy::clamp_mode::iterated_best_response;
            } else {
                throw config_error(
                    "field 'energy.mode' must be paper_clamp or iterated_best_response");
            }
        }
        cfg.energy = es;
    }

    if (j.contains("hardware")) {
        const auto& h = j.at("hardware");
        hardware_section hs;
        if (h.contains("quantum_kind")) {
            hs.quantum_kind = detail::parse_hardware_kind(
                require_string(h, "quantum_kind", "hardware."), "hardware.quantum_kind");
        }
        if (h.contains("classical_kind")) {
            hs.classical_kind = detail::parse_hardware_kind(
                require_string(h, "classical_kind", "hardware."), "hardware.classical_kind");
        }
        if (h.contains("constants")) {
            const auto& c = h.at("constants");
            if (c.contains("alpha")) hs.constants.alpha = require_number(c, "alpha", "hardware.constants.");
            if (c.contains("mu")) hs.constants.mu = require_number(c, "mu", "hardware.constants.");
            if (c.contains("beta_rydberg"))
                hs.constants.beta_rydberg = require_number(c, "beta_rydberg", "hardware.constants.");
            if (c.contains("beta_ion"))
                hs.constants.beta_ion = require_number(c, "beta_ion", "hardware.constants.");
            if (c.contains("beta_classical"))
                hs.constants.beta_classical =
                    require_number(c, "beta_classical", "hardware.constants.");
        }
        if (h.contains("bracket")) {
            const auto& b = h.at("bracket");
            if (!b.is_array() || b.size() != 2 || !b[0].is_number() || !b[1].is_number()) {
                throw config_error("field 'hardware.bracket' must be [a_lo, a_hi]");
            }
            hs.bracket = std::make_pair(b[0].get<double>(), b[1].get<double>());
            if (!(hs.bracket->first > 0.0 && hs.bracket->second > hs.bracket->first)) {
                throw config_error("field 'hardware.bracket' requires 0 < a_lo < a_hi");
            }
        }
        cfg.hardware = hs;
    }

    if (j.contains("sweep")) {
        const auto& sw = j.at("sweep");
        sweep_section ss;
        ss.variable = require_string(sw, "variable", "sweep.");
        if (ss.variable != "cap_E" && ss.variable != "n_q" && ss.variable != "a") {
            throw config_error("field 'sweep.variable' must be one of cap_E, n_q, a");
        }
        const auto& g = require(sw, "grid", "sweep.");
        const std::string kind = require_string(g, "kind", "sweep.grid.");
        if (kind == "linear") {
            ss.grid.kind = grid_kind::linear;
        } else if (kind == "log") {
            ss.grid.kind = grid_kind::log10;
        } else {
            throw config_error("field 'sweep.grid.kind' must be linear or log");
        }
        ss.grid.start = require_number(g, "start", "sweep.grid.");
        ss.grid.stop = require_number(g, "stop", "sweep.grid.");
        ss.grid.points = require_count(g, "points", "sweep.grid.");
        try {
            ss.grid.validate();
        } catch (const error& e) {
            throw config_error(e.what());
        }
        cfg.sweep = ss;
    }

    if (j.contains("output")) {
        const auto& o = j.at("output");
        if (o.contains("path")) cfg.output_path = require_string(o, "path", "output.");
        if (o.contains("format")) {
            const std::string fmt = require_string(o, "format", "output.");
            if (fmt != "csv") throw config_error("field 'output.format' must be csv");
        }
    }
    return cfg;
}

inline run_config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw config_error("config parse error in '" + path + "': " + e.what());
    }
    return parse_config(j);
}

// ---------------------------------------------------------------------------
// Canonical echo (for CSV metadata); omits the output path so that reruns
// writing to different locations stay byte-identical.
// ---------------------------------------------------------------------------

inline nlohmann::json to_json(const energy::energy_model& m) {
    return {{"kind", energy::to_string(m.kind)}, {"beta", m.beta}, {"exponent", m.exponent}};
}

inline nlohmann::json echo_json(const run_config& cfg) {
    nlohmann::json j;
    j["market"] = {{"n_q", cfg.market.n_q},         {"n_c", cfg.market.n_c},
                   {"a_q", cfg.market.a_q},         {"a_c", cfg.market.a_c},
                   {"theta_q", cfg.market.theta_q}, {"theta_c", cfg.market.theta_c},
                   {"gamma_qq", cfg.market.gamma_qq}, {"gamma_cc", cfg.market.gamma_cc},
                   {"gamma_qc", cfg.market.gamma_qc}};
    if (cfg.energy) {
        j["energy"] = {{"model_q", to_json(cfg.energy->model_q)},
                       {"model_c", to_json(cfg.energy->model_c)},
                       {"cap_E", cfg.energy->cap_e},
                       {"mode", energy::to_string(cfg.energy->mode)}};
    }
    if (cfg.hardware) {
        j["hardware"] = {{"quantum_kind", hardware::to_string(cfg.hardware->quantum_kind)},
                         {"classical_kind", hardware::to_string(cfg.hardware->classical_kind)},
                         {"constants",
                          {{"alpha", cfg.hardware->constants.alpha},
                           {"mu", cfg.hardware->constants.mu},
                           {"beta_rydberg", cfg.hardware->constants.beta_rydberg},
                           {"beta_ion", cfg.hardware->constants.beta_ion},
                           {"beta_classical", cfg.hardware->constants.beta_classical}}}};
        if (cfg.hardware->bracket) {
            j["hardware"]["bracket"] = {cfg.hardware->bracket->first,
                                        cfg.hardware->bracket->second};
        }
    }
    if (cfg.sweep) {
        j["sweep"] = {{"variable", cfg.sweep->variable},
                      {"grid",
                       {{"kind", cfg.sweep->grid.kind == grid_kind::linear ? "linear" : "log"},
                        {"start", cfg.sweep->grid.start},
                        {"stop", cfg.sweep->grid.stop},
                        {"points", cfg.sweep->grid.points}}}};
    }
    return j;
}

// ---------------------------------------------------------------------------
// Figure presets
// ---------------------------------------------------------------------------

/// Profit-vs-cap sweep: symmetric duopoly, unit energy curves, linear cap
/// grid over [0.1, 4] stepping by 0.02 so that E = 1 is itself a grid point.
inline run_config preset_fig1() {
    run_config cfg;
    cfg.preset_name = "fig1";
    cfg.market = {1, 1, 10.0, 10.0, 3.0, 2.0, 2.0, 2.0, 1.0};
    energy_section es;
    es.model_q = {energy::energy_kind::log_power, 1.0, 1.0};
    es.model_c = {energy::energy_kind::power_law, 1.0, 1.0};
    es.cap_e = 1.0;
    es.mode = energy::clamp_mode::paper_clamp;
    cfg.energy = es;
    cfg.sweep = sweep_section{"cap_E", {grid_kind::linear, 0.1, 4.0, 196}};
    cfg.output_path = "fig1.csv";
    return cfg;
}

/// Energy-vs-ratio sweep: one classical firm, quantum group growing from 1
/// to 20, unit energy curves, a = 30.
inline run_config preset_fig2() {
    run_config cfg;
    cfg.preset_name = "fig2";
    cfg.market = {1, 1, 30.0, 30.0, 3.0, 2.0, 2.0, 2.0, 1.0};
    energy_section es;
    es.model_q = {energy::energy_kind::log_power, 1.0, 1.0};
    es.model_c = {energy::energy_kind::power_law, 1.0, 1.0};
    cfg.energy = es;
    cfg.sweep = sweep_section{"n_q", {grid_kind::linear, 1.0, 20.0, 20}};
    cfg.output_path = "fig2.csv";
    return cfg;
}

/// Energy-vs-scale sweep with the physical hardware constants: ten firms per
/// group, near-differentiated offerings, demand intercept swept over twenty
/// decades (the grid contains 1e3, 1e13, and 1e20 exactly).
inline run_config preset_fig3() {
    run_config cfg;
    cfg.preset_name = "fig3";
    cfg.market = {10, 10, 483.0, 483.0, 2.0, 2.0, 2.0, 2.0, 0.1};
    hardware_section hs;
    hs.quantum_kind = hardware::hardware_kind::ion_trap;
    hs.classical_kind = hardware::hardware_kind::classical_hpc;
    cfg.hardware = hs;
    cfg.sweep = sweep_section{"a", {grid_kind::log10, 1e2, 1e22, 201}};
    cfg.output_path = "fig3.csv";
    return cfg;
}

inline run_config preset(const std::string& name) {
    if (name == "fig1") return preset_fig1();
    if (name == "fig2") return preset_fig2();
    if (name == "fig3") return preset_fig3();
    throw config_error("unknown preset '" + name + "' (expected fig1, fig2, or fig3)");
}

} // namespace qcournot::cli
