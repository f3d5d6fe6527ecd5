// Command-line front end: single-point equilibria, the three figure-preset
// sweeps, the critical-scale finder, and the randomized verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 degenerate model, 4 no crossing in the searched bracket.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcournot/config.hpp"
#include "qcournot/sweep.hpp"
#include "qcournot/verify.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_verify_failure = 1;
constexpr int exit_config_error = 2;
constexpr int exit_degenerate = 3;
constexpr int exit_no_crossing = 4;

struct options {
    std::string config_path;
    std::string preset_name;
    std::string out_path;
    std::uint64_t seed = 42;
    std::size_t trials = 0;  // 0 = per-suite defaults
};

qcournot::cli::run_config resolve_config(const options& opt) {
    if (!opt.config_path.empty() && !opt.preset_name.empty()) {
        throw qcournot::config_error("--config and --preset are mutually exclusive");
    }
    qcournot::cli::run_config cfg;
    if (!opt.preset_name.empty()) {
        cfg = qcournot::cli::preset(opt.preset_name);
    } else if (!opt.config_path.empty()) {
        cfg = qcournot::cli::load_config_file(opt.config_path);
    } else {
        throw qcournot::config_error("provide --config <file> or --preset <fig1|fig2|fig3>");
    }
    if (!opt.out_path.empty()) cfg.output_path = opt.out_path;
    return cfg;
}

void write_table(const qcournot::cli::sweep_table& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw qcournot::config_error("cannot open output file '" + path + "'");
    qcournot::cli::write_csv(table, out);
    if (!out) throw qcournot::config_error("failed while writing '" + path + "'");
    std::cout << "wrote " << table.rows.size() << " rows to " << path << "\n";
}

int run_verify_command(const options& opt) {
    const std::size_t oracle = opt.trials ? opt.trials : 500;
    const std::size_t block = opt.trials ? opt.trials : 200;
    const std::size_t foc = opt.trials ? opt.trials : 100;
    const auto report = qcournot::verify::run_all(opt.seed, oracle, block, foc);
    std::cout << "seed: " << report.seed << "\n";
    for (const auto& s : report.suites) {
        std::cout << s.name << ": " << (s.trials - s.failures) << "/" << s.trials
                  << " passed, worst residual " << qcournot::cli::format_value(s.worst_residual)
                  << " (tolerance " << s.tolerance << ")\n";
        if (!s.first_failure.empty()) {
            std::cout << "  first failure: seed " << report.seed << ", " << s.first_failure
                      << "\n";
        }
    }
    std::cout << (report.all_passed() ? "verify: PASS" : "verify: FAIL") << "\n";
    return report.all_passed() ? exit_ok : exit_verify_failure;
}

int run_threshold_command(const options& opt) {
    const auto cfg = resolve_config(opt);
    const auto rep = qcournot::cli::find_threshold(cfg);
    const auto show = [](const char* name,
                         const std::optional<qcournot::hardware::critical_scale_result>& r,
                         const std::string& failure) {
        if (r) {
            std::cout << name << ": a* = " << qcournot::cli::format_value(r->a_star)
                      << ", residual = " << qcournot::cli::format_value(r->residual)
                      << ", bracket [" << qcournot::cli::format_value(r->bracket_lo) << ", "
                      << qcournot::cli::format_value(r->bracket_hi) << "]\n";
        } else {
            std::cout << name << ": no crossing (" << failure << ")\n";
        }
    };
    show("ion_trap", rep.ion, rep.ion_failure);
    show("rydberg", rep.rydberg, rep.rydberg_failure);
    if (!rep.complete()) return exit_no_crossing;
    write_table(qcournot::cli::threshold_table(cfg, rep), cfg.output_path);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cournot equilibria for markets of quantum and classical computing firms "
                 "under energy constraints"};
    app.require_subcommand(1);

    options opt;
    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON run configuration file");
        sub->add_option("--preset", opt.preset_name, "built-in preset: fig1, fig2, or fig3");
        sub->add_option("--out", opt.out_path, "override the CSV output path");
        sub->add_option("--seed", opt.seed, "random instance seed (used by verify)");
        sub->add_option("--trials", opt.trials, "trial count (used by verify)");
    };

    auto* equilibrium = app.add_subcommand(
        "equilibrium", "solve one market and report quantities, prices, profits");
    add_common(equilibrium);
    auto* sweep_energy = app.add_subcommand(
        "sweep-energy", "sweep a shared energy cap and tabulate constrained profits");
    add_common(sweep_energy);
    auto* sweep_ratio = app.add_subcommand(
        "sweep-ratio", "sweep the quantum group size and tabulate equilibrium energy");
    add_common(sweep_ratio);
    auto* sweep_scale = app.add_subcommand(
        "sweep-scale", "sweep the demand intercept and tabulate per-platform energy");
    add_common(sweep_scale);
    auto* threshold = app.add_subcommand(
        "threshold", "locate the scale where quantum energy cost crosses classical");
    add_common(threshold);
    auto* verify = app.add_subcommand(
        "verify", "replay closed forms against the linear-solve and gradient oracles");
    verify->add_option("--seed", opt.seed, "random instance seed");
    verify->add_option("--trials", opt.trials, "trial count for every suite");
    verify->add_option("--config", opt.config_path, "accepted for symmetry; ignored");
    verify->add_option("--out", opt.out_path, "accepted for symmetry; ignored");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_config_error;
    }

    try {
        if (equilibrium->parsed()) {
            const auto cfg = resolve_config(opt);
            std::cout << qcournot::cli::render_report(cfg, qcournot::cli::run_equilibrium(cfg));
            return exit_ok;
        }
        if (sweep_energy->parsed()) {
            const auto cfg = resolve_config(opt);
            write_table(qcournot::cli::sweep_energy_constraint(cfg), cfg.output_path);
            return exit_ok;
        }
        if (sweep_ratio->parsed()) {
            const auto cfg = resolve_config(opt);
            write_table(qcournot::cli::sweep_ratio(cfg), cfg.output_path);
            return exit_ok;
        }
        if (sweep_scale->parsed()) {
            const auto cfg = resolve_config(opt);
            write_table(qcournot::cli::sweep_scale(cfg), cfg.output_path);
            return exit_ok;
        }
        if (threshold->parsed()) return run_threshold_command(opt);
        if (verify->parsed()) return run_verify_command(opt);
    } catch (const qcournot::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const qcournot::no_sign_change_error& e) {
        std::cerr << "no crossing: " << e.what() << "\n";
        return exit_no_crossing;
    } catch (const qcournot::degenerate_denominator_error& e) {
        std::cerr << "degenerate model: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const qcournot::singular_matrix_error& e) {
        std::cerr << "degenerate model: " << e.what() << "\n";
        return exit_degenerate;
    } catch (const qcournot::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_degenerate;
    }
    return exit_config_error;
}
