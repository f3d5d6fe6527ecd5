#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string cli = QCOURNOT_CLI_PATH;

struct run_result {
    int exit_code = -1;
    std::string output;
};

run_result run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path dir = fs::path("cli_test_tmp");
    fs::create_directories(dir);
    const fs::path log = dir / ("out_" + std::to_string(counter++) + ".txt");
    const std::string cmd = "\"" + cli + "\" " + args + " > " + log.string() + " 2>&1";
    const int raw = std::system(cmd.c_str());
    run_result r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    std::ifstream in(log);
    std::ostringstream os;
    os << in.rdbuf();
    r.output = os.str();
    return r;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path dir = fs::path("cli_test_tmp");
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

} // namespace

TEST_CASE("cli: equilibrium preset reports the duopoly point") {
    const auto r = run_cli("equilibrium --preset fig1");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("q_q*") != std::string::npos);
    REQUIRE(r.output.find("1.3043478260869565e+00") != std::string::npos);
}

TEST_CASE("cli: malformed config exits 2 with a diagnostic") {
    const auto bad = write_temp("bad.json", "{ this is not json");
    const auto r = run_cli("equilibrium --config " + bad.string());
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.output.find("config") != std::string::npos);
}

TEST_CASE("cli: missing required field names the field") {
    const auto cfg = write_temp("incomplete.json", R"({"market": {"n_q": 1}})");
    const auto r = run_cli("equilibrium --config " + cfg.string());
    REQUIRE(r.exit_code == 2);
    REQUIRE(r.output.find("market.n_c") != std::string::npos);
}

TEST_CASE("cli: config and preset are mutually exclusive; neither is an error too") {
    const auto cfg = write_temp("fine.json", R"({
      "market": {"n_q": 1, "n_c": 1, "a_q": 10.0, "a_c": 10.0,
                 "theta_q": 3.0, "theta_c": 2.0,
                 "gamma_qq": 2.0, "gamma_cc": 2.0, "gamma_qc": 1.0}})");
    REQUIRE(run_cli("equilibrium --config " + cfg.string() + " --preset fig1").exit_code == 2);
    REQUIRE(run_cli("equilibrium").exit_code == 2);
    REQUIRE(run_cli("equilibrium --preset fig9").exit_code == 2);
    REQUIRE(run_cli("frobnicate --preset fig1").exit_code == 2);
}

TEST_CASE("cli: degenerate market exits 3") {
    // n_q = n_c = 1 with 4 theta_q theta_c = gamma_qc^2 cancels the
    // closed-form denominator.
    const auto cfg = write_temp("degenerate.json", R"({
      "market": {"n_q": 1, "n_c": 1, "a_q": 10.0, "a_c": 10.0,
                 "theta_q": 1.0, "theta_c": 1.0,
                 "gamma_qq": 2.0, "gamma_cc": 2.0, "gamma_qc": 2.0}})");
    const auto r = run_cli("equilibrium --config " + cfg.string());
    REQUIRE(r.exit_code == 3);
    REQUIRE(r.output.find("degenerate") != std::string::npos);
}

TEST_CASE("cli: threshold with a crossing-free bracket exits 4") {
    const auto cfg = write_temp("nocrossing.json", R"({
      "market": {"n_q": 10, "n_c": 10, "a_q": 483.0, "a_c": 483.0,
                 "theta_q": 2.0, "theta_c": 2.0,
                 "gamma_qq": 2.0, "gamma_cc": 2.0, "gamma_qc": 0.1},
      "hardware": {"bracket": [100.0, 1000.0]}})");
    const auto r = run_cli("threshold --config " + cfg.string());
    REQUIRE(r.exit_code == 4);
    REQUIRE(r.output.find("no crossing") != std::string::npos);
}

TEST_CASE("cli: threshold preset reports both platforms and writes one row") {
    const auto out = fs::path("cli_test_tmp") / "thresholds.csv";
    const auto r = run_cli("threshold --preset fig3 --out " + out.string());
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("ion_trap: a* = ") != std::string::npos);
    REQUIRE(r.output.find("rydberg: a* = ") != std::string::npos);
    const auto csv = slurp(out);
    REQUIRE(csv.find("a_star_ion,residual_ion,a_star_rydberg,residual_rydberg,status") !=
            std::string::npos);
}

TEST_CASE("cli: verify passes on the default seed") {
    const auto r = run_cli("verify");
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("oracle-equivalence: 500/500 passed") != std::string::npos);
    REQUIRE(r.output.find("block-inverse-identity: 200/200 passed") != std::string::npos);
    REQUIRE(r.output.find("foc-gradient: 100/100 passed") != std::string::npos);
    REQUIRE(r.output.find("verify: PASS") != std::string::npos);
}

TEST_CASE("cli: verify reruns with a fixed seed are bit-identical") {
    const auto a = run_cli("verify --seed 7 --trials 50");
    const auto b = run_cli("verify --seed 7 --trials 50");
    REQUIRE(a.exit_code == 0);
    REQUIRE(a.output == b.output);
}

TEST_CASE("cli: verify with 5000 trials per suite stays under ten seconds") {
    const auto start = std::chrono::steady_clock::now();
    const auto r = run_cli("verify --trials 5000");
    const auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    REQUIRE(r.exit_code == 0);
    REQUIRE(r.output.find("oracle-equivalence: 5000/5000 passed") != std::string::npos);
    REQUIRE(elapsed.count() < 10.0);
}

TEST_CASE("cli: preset sweeps rerun byte-identically") {
    const auto dir = fs::path("cli_test_tmp");
    for (const std::string preset : {"fig1", "fig2", "fig3"}) {
        const std::string command = preset == "fig1"   ? "sweep-energy"
                                    : preset == "fig2" ? "sweep-ratio"
                                                       : "sweep-scale";
        const auto first = dir / (preset + "_a.csv");
        const auto second = dir / (preset + "_b.csv");
        REQUIRE(run_cli(command + " --preset " + preset + " --out " + first.string()).exit_code ==
                0);
        REQUIRE(run_cli(command + " --preset " + preset + " --out " + second.string()).exit_code ==
                0);
        REQUIRE(slurp(first) == slurp(second));
    }
}

TEST_CASE("cli: preset sweeps match the committed golden CSVs byte for byte") {
    const fs::path golden = fs::path(QCOURNOT_SOURCE_DIR) / "tests" / "golden";
    const fs::path dir = fs::path("cli_test_tmp");
    const struct {
        std::string preset, command;
    } cases[] = {{"fig1", "sweep-energy"}, {"fig2", "sweep-ratio"}, {"fig3", "sweep-scale"}};
    for (const auto& c : cases) {
        const auto out = dir / (c.preset + "_golden_check.csv");
        REQUIRE(run_cli(c.command + " --preset " + c.preset + " --out " + out.string())
                    .exit_code == 0);
        REQUIRE(slurp(out) == slurp(golden / (c.preset + ".csv")));
    }
}

TEST_CASE("cli: mismatched sweep command exits 2") {
    const auto r = run_cli("sweep-ratio --preset fig1");
    REQUIRE(r.exit_code == 2);
}
