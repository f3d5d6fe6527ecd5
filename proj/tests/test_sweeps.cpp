#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cmath>

#include "qcournot/sweep.hpp"

using namespace qcournot;

namespace {

std::size_t column_index(const cli::sweep_table& t, const std::string& name) {
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (t.columns[i] == name) return i;
    FAIL("no column named " + name);
    return 0;
}

} // namespace

TEST_CASE("fig1 sweep: unit-budget row, binding regions, and Nash tail") {
    const auto t = cli::sweep_energy_constraint(cli::preset_fig1());
    REQUIRE(t.rows.size() == 196);
    REQUIRE(t.columns ==
            std::vector<std::string>{"E", "q_q_E", "q_c_E", "q_q_F", "q_c_F", "pi_q_F", "pi_c_F",
                                     "pi_q_star", "pi_c_star"});

    const auto e_col = column_index(t, "E");
    const auto piq = column_index(t, "pi_q_F");
    const auto pic = column_index(t, "pi_c_F");
    const auto piq_star = column_index(t, "pi_q_star");
    const auto pic_star = column_index(t, "pi_c_star");

    // Grid point 45 is exactly E = 1; both groups shift to their thresholds
    // (2, 1) and earn 6 each.
    REQUIRE(t.rows[45].values[e_col] == 1.0);
    REQUIRE(std::abs(t.rows[45].values[piq] - 6.0) < 1e-12);
    REQUIRE(std::abs(t.rows[45].values[pic] - 6.0) < 1e-12);

    // The unconstrained reference columns are the Nash profits everywhere.
    for (const auto& row : t.rows) {
        REQUIRE(row.status == cli::row_ok);
        REQUIRE(std::abs(row.values[piq_star] - 2700.0 / 529.0) < 1e-10);
        REQUIRE(std::abs(row.values[pic_star] - 5000.0 / 529.0) < 1e-10);
    }

    // Non-binding tail: caps exceed the Nash point for E > 50/23, so the
    // constrained profits equal the unconstrained ones.
    for (const auto& row : t.rows) {
        if (row.values[e_col] > 50.0 / 23.0 + 1e-9) {
            REQUIRE(std::abs(row.values[piq] - row.values[piq_star]) < 1e-10);
            REQUIRE(std::abs(row.values[pic] - row.values[pic_star]) < 1e-10);
        }
    }

    // Rows are ordered by the swept variable.
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
        REQUIRE(t.rows[i].values[e_col] > t.rows[i - 1].values[e_col]);
    }
}

TEST_CASE("fig2 sweep: anchor row, persistent gap, shrinking gap") {
    const auto t = cli::sweep_ratio(cli::preset_fig2());
    REQUIRE(t.rows.size() == 20);
    REQUIRE(t.columns == std::vector<std::string>{"n_q_over_n_c", "E_q", "E_c"});

    REQUIRE(t.rows[0].values[0] == 1.0);
    REQUIRE(std::abs(t.rows[0].values[1] - std::log2(90.0 / 23.0)) < 1e-12);
    REQUIRE(std::abs(t.rows[0].values[2] - 150.0 / 23.0) < 1e-12);

    double prev_gap = std::numeric_limits<double>::infinity();
    for (const auto& row : t.rows) {
        REQUIRE(row.status == cli::row_ok);
        REQUIRE(row.values[1] < row.values[2]);
        const double gap = row.values[2] - row.values[1];
        REQUIRE(gap < prev_gap);
        prev_gap = gap;
    }
}

TEST_CASE("fig3 sweep: platform energies at the anchor scales") {
    const auto t = cli::sweep_scale(cli::preset_fig3());
    REQUIRE(t.rows.size() == 201);
    const auto a_col = column_index(t, "a");
    const auto ryd = column_index(t, "E_rydberg");
    const auto ion = column_index(t, "E_ion");
    const auto hpc = column_index(t, "E_classical");

    const auto row_at = [&](double a) -> const cli::sweep_row& {
        for (const auto& row : t.rows)
            if (row.values[a_col] == a) return row;
        FAIL("no row at a = " + std::to_string(a));
        return t.rows.front();
    };

    for (const auto& row : t.rows) REQUIRE(row.status == cli::row_ok);

    // Small scale: both quantum platforms cost more energy than classical.
    REQUIRE(row_at(1e3).values[ion] > row_at(1e3).values[hpc]);
    REQUIRE(row_at(1e3).values[ryd] > row_at(1e3).values[hpc]);
    // Ion trap wins by 1e13; Rydberg still loses there but wins by 1e20.
    REQUIRE(row_at(1e13).values[ion] < row_at(1e13).values[hpc]);
    REQUIRE(row_at(1e20).values[ryd] < row_at(1e20).values[hpc]);
}

TEST_CASE("sweep rows outside the model domain are flagged, not fatal") {
    // Budgets past ~1023 overflow the quantum cap 2^E.
    auto cfg = cli::preset_fig1();
    cfg.sweep->grid = {cli::grid_kind::linear, 1000.0, 1100.0, 6};
    const auto t = cli::sweep_energy_constraint(cfg);
    REQUIRE(t.rows.size() == 6);
    REQUIRE(t.rows.front().status == cli::row_ok);
    REQUIRE(t.rows.back().status == cli::row_domain_error);
    REQUIRE(std::isnan(t.rows.back().values[3]));

    // Scales so small that the per-firm quantity leaves the log domain.
    auto scfg = cli::preset_fig3();
    scfg.sweep->grid = {cli::grid_kind::log10, 1e0, 1e4, 5};
    const auto s = cli::sweep_scale(scfg);
    REQUIRE(s.rows.front().status == cli::row_domain_error);
    REQUIRE(std::isnan(s.rows.front().values[3]));                // no Rydberg energy
    REQUIRE_FALSE(std::isnan(s.rows.front().values[1]));          // quantities still present
    REQUIRE_FALSE(std::isnan(s.rows.front().values[5]));          // classical still present
    REQUIRE(s.rows.back().status == cli::row_ok);
}

TEST_CASE("sweep commands validate their section and variable") {
    auto cfg = cli::preset_fig1();
    REQUIRE_THROWS_AS(cli::sweep_ratio(cfg), config_error);
    REQUIRE_THROWS_AS(cli::sweep_scale(cfg), config_error);
    cfg.energy.reset();
    REQUIRE_THROWS_AS(cli::sweep_energy_constraint(cfg), config_error);
}

TEST_CASE("threshold report covers both quantum platforms") {
    const auto rep = cli::find_threshold(cli::preset_fig3());
    REQUIRE(rep.complete());
    REQUIRE(rep.ion->a_star > 1e11);
    REQUIRE(rep.ion->a_star < 1e13);
    REQUIRE(rep.rydberg->a_star > 1e16);
    REQUIRE(rep.rydberg->a_star < 1e21);
    REQUIRE(rep.ion->residual <= 1e-6);
    REQUIRE(rep.rydberg->residual <= 1e-6);

    const auto t = cli::threshold_table(cli::preset_fig3(), rep);
    REQUIRE(t.rows.size() == 1);
    REQUIRE(t.rows[0].values.size() == 4);
    REQUIRE(t.rows[0].status == cli::row_ok);
}

TEST_CASE("threshold honors a strict config bracket") {
    auto cfg = cli::preset_fig3();
    cfg.hardware->bracket = std::make_pair(1e2, 1e3);
    const auto rep = cli::find_threshold(cfg);
    REQUIRE_FALSE(rep.complete());
    REQUIRE_FALSE(rep.ion.has_value());
    REQUIRE_FALSE(rep.rydberg.has_value());
    REQUIRE_FALSE(rep.ion_failure.empty());
}

TEST_CASE("equilibrium report: duopoly values and oracle agreement") {
    const auto cfg = cli::preset_fig1();
    const auto rep = cli::run_equilibrium(cfg);
    REQUIRE(std::abs(rep.eq.q_q - 30.0 / 23.0) < 1e-14);
    REQUIRE(std::abs(rep.eq.q_c - 50.0 / 23.0) < 1e-14);
    REQUIRE(rep.oracle_residual < 1e-10);
    REQUIRE(rep.all_nonnegative);
    REQUIRE(rep.warnings.empty());

    const auto text = cli::render_report(cfg, rep);
    REQUIRE(text.find("q_q*") != std::string::npos);
    REQUIRE(text.find("oracle residual") != std::string::npos);
}

TEST_CASE("equilibrium report: perfectly differentiated firms act as monopolies") {
    auto cfg = cli::preset_fig1();
    cfg.market.gamma_qc = 0.0;
    const auto rep = cli::run_equilibrium(cfg);
    REQUIRE(std::abs(rep.eq.q_q - 10.0 / 6.0) < 1e-14);
    REQUIRE(std::abs(rep.eq.q_c - 10.0 / 4.0) < 1e-14);
}

TEST_CASE("csv rendering: metadata, header, trailing status, determinism") {
    auto cfg = cli::preset_fig2();
    const auto t = cli::sweep_ratio(cfg);
    const auto text = cli::render_csv(t);
    REQUIRE(text.rfind("# tool: qcournot", 0) == 0);
    REQUIRE(text.find("# command: sweep-ratio") != std::string::npos);
    REQUIRE(text.find("# preset: fig2") != std::string::npos);
    REQUIRE(text.find("n_q_over_n_c,E_q,E_c,status\n") != std::string::npos);
    REQUIRE(text.find("nan") == std::string::npos);
    REQUIRE(text == cli::render_csv(cli::sweep_ratio(cfg)));

    // 17 significant digits in scientific notation.
    REQUIRE(text.find("6.5217391304347823e+00") != std::string::npos);
}

TEST_CASE("a 200-point cap sweep completes within a second") {
    auto cfg = cli::preset_fig1();
    cfg.sweep->grid = {cli::grid_kind::linear, 0.1, 4.0, 200};
    const auto start = std::chrono::steady_clock::now();
    const auto t = cli::sweep_energy_constraint(cfg);
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    REQUIRE(t.rows.size() == 200);
    REQUIRE(elapsed.count() < 1.0);
}
