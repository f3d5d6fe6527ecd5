#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "qcournot/config.hpp"

using namespace qcournot;
using nlohmann::json;

namespace {

json minimal_market() {
    return json::parse(R"({
      "market": {"n_q": 1, "n_c": 1, "a_q": 10.0, "a_c": 10.0,
                 "theta_q": 3.0, "theta_c": 2.0,
                 "gamma_qq": 2.0, "gamma_cc": 2.0, "gamma_qc": 1.0}
    })");
}

} // namespace

TEST_CASE("presets carry the documented figure parameters") {
    const auto fig1 = cli::preset("fig1");
    REQUIRE(fig1.market.n_q == 1);
    REQUIRE(fig1.market.a_q == 10.0);
    REQUIRE(fig1.market.theta_q == 3.0);
    REQUIRE(fig1.market.gamma_qc == 1.0);
    REQUIRE(fig1.energy);
    REQUIRE(fig1.energy->model_q.kind == energy::energy_kind::log_power);
    REQUIRE(fig1.energy->mode == energy::clamp_mode::paper_clamp);
    REQUIRE(fig1.sweep->variable == "cap_E");
    REQUIRE(fig1.sweep->grid.points == 196);

    const auto fig2 = cli::preset("fig2");
    REQUIRE(fig2.market.a_q == 30.0);
    REQUIRE(fig2.market.n_c == 1);
    REQUIRE(fig2.sweep->variable == "n_q");
    REQUIRE(fig2.sweep->grid.points == 20);

    const auto fig3 = cli::preset("fig3");
    REQUIRE(fig3.market.n_q == 10);
    REQUIRE(fig3.market.gamma_qc == 0.1);
    REQUIRE(fig3.market.theta_q == 2.0);
    REQUIRE(fig3.hardware);
    REQUIRE(fig3.hardware->constants.beta_ion == 0.0175);
    REQUIRE(fig3.sweep->variable == "a");

    REQUIRE_THROWS_AS(cli::preset("fig4"), config_error);
}

TEST_CASE("shipped config files mirror the presets") {
    const std::string base = QCOURNOT_SOURCE_DIR "/configs/";
    {
        const auto cfg = cli::load_config_file(base + "fig1.json");
        const auto ref = cli::preset_fig1();
        REQUIRE(cfg.market.a_q == ref.market.a_q);
        REQUIRE(cfg.market.gamma_qc == ref.market.gamma_qc);
        REQUIRE(cfg.energy->model_q.kind == ref.energy->model_q.kind);
        REQUIRE(cfg.energy->mode == ref.energy->mode);
        REQUIRE(cfg.sweep->variable == ref.sweep->variable);
        REQUIRE(cfg.sweep->grid.start == ref.sweep->grid.start);
        REQUIRE(cfg.sweep->grid.stop == ref.sweep->grid.stop);
        REQUIRE(cfg.sweep->grid.points == ref.sweep->grid.points);
    }
    {
        const auto cfg = cli::load_config_file(base + "fig2.json");
        const auto ref = cli::preset_fig2();
        REQUIRE(cfg.market.a_q == ref.market.a_q);
        REQUIRE(cfg.sweep->variable == ref.sweep->variable);
        REQUIRE(cfg.sweep->grid.points == ref.sweep->grid.points);
    }
    {
        const auto cfg = cli::load_config_file(base + "fig3.json");
        const auto ref = cli::preset_fig3();
        REQUIRE(cfg.market.n_q == ref.market.n_q);
        REQUIRE(cfg.hardware->constants.beta_classical == ref.hardware->constants.beta_classical);
        REQUIRE(cfg.sweep->grid.start == ref.sweep->grid.start);
        REQUIRE(cfg.sweep->grid.stop == ref.sweep->grid.stop);
    }
}

TEST_CASE("parse errors name the offending field") {
    json j = minimal_market();
    j["market"].erase("theta_q");
    try {
        cli::parse_config(j);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        REQUIRE(std::string(e.what()).find("market.theta_q") != std::string::npos);
    }

    j = minimal_market();
    j["market"]["theta_q"] = "three";
    REQUIRE_THROWS_AS(cli::parse_config(j), config_error);

    j = minimal_market();
    j["market"]["n_q"] = -2;
    REQUIRE_THROWS_AS(cli::parse_config(j), config_error);

    j = minimal_market();
    j["energy"] = {{"model_q", {{"kind", "warp"}, {"beta", 1.0}, {"exponent", 1.0}}},
                   {"model_c", {{"kind", "power_law"}, {"beta", 1.0}, {"exponent", 1.0}}}};
    REQUIRE_THROWS_AS(cli::parse_config(j), config_error);

    j = minimal_market();
    j["sweep"] = {{"variable", "temperature"},
                  {"grid", {{"kind", "linear"}, {"start", 0.0}, {"stop", 1.0}, {"points", 5}}}};
    REQUIRE_THROWS_AS(cli::parse_config(j), config_error);

    j = minimal_market();
    j["sweep"] = {{"variable", "cap_E"},
                  {"grid", {{"kind", "linear"}, {"start", 0.0}, {"stop", 1.0}, {"points", 1}}}};
    REQUIRE_THROWS_AS(cli::parse_config(j), config_error);

    j = minimal_market();
    j["sweep"] = {{"variable", "a"},
                  {"grid", {{"kind", "log"}, {"start", -1.0}, {"stop", 10.0}, {"points", 5}}}};
    REQUIRE_THROWS_AS(cli::parse_config(j), config_error);

    j = minimal_market();
    j["hardware"] = {{"bracket", {100.0}}};
    REQUIRE_THROWS_AS(cli::parse_config(j), config_error);
}

TEST_CASE("market invariants are enforced at parse time") {
    json j = minimal_market();
    j["market"]["a_q"] = -5.0;
    REQUIRE_THROWS_AS(cli::parse_config(j), config_error);
}

TEST_CASE("grid values land on the documented anchor points exactly") {
    const auto fig1 = cli::preset_fig1().sweep->grid.values();
    REQUIRE(fig1.size() == 196);
    REQUIRE(fig1.front() == 0.1);
    REQUIRE(fig1[45] == 1.0);
    REQUIRE(fig1.back() == 4.0);

    const auto fig3 = cli::preset_fig3().sweep->grid.values();
    REQUIRE(fig3.size() == 201);
    REQUIRE(fig3.front() == 1e2);
    REQUIRE(fig3[10] == 1e3);
    REQUIRE(fig3[110] == 1e13);
    REQUIRE(fig3[180] == 1e20);
    REQUIRE(fig3.back() == 1e22);
}

TEST_CASE("config echo is canonical and omits the output path") {
    auto cfg = cli::preset_fig1();
    cfg.output_path = "/tmp/somewhere/else.csv";
    const auto echoed = cli::echo_json(cfg);
    REQUIRE_FALSE(echoed.contains("output"));
    REQUIRE(echoed.dump() == cli::echo_json(cfg).dump());
    REQUIRE(echoed["market"]["a_q"] == 10.0);
    REQUIRE(echoed["sweep"]["grid"]["points"] == 196);
}

TEST_CASE("missing config file yields a config error") {
    REQUIRE_THROWS_AS(cli::load_config_file("/nonexistent/path.json"), config_error);
}
