// End-to-end exercises of the tline-dce binary: output files, schemas, exit
// codes, determinism, and the verification negative control. The binary path
// comes in through TLINE_CLI_PATH at compile time.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CliRun {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Runs the binary with `args`, capturing exit code and both streams. Each
// call gets its own scratch directory under /tmp.
CliRun run_cli(const std::string& args, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path out_file = dir / "stdout.txt";
    const fs::path err_file = dir / "stderr.txt";
    const std::string command = std::string(TLINE_CLI_PATH) + " " + args +
                                " >" + out_file.string() + " 2>" +
                                err_file.string();
    const int raw = std::system(command.c_str());
    CliRun run;
    run.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    run.out = slurp(out_file);
    run.err = slurp(err_file);
    return run;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::path("/tmp/tline_cli_tests") / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::size_t line_count(const std::string& text) {
    return static_cast<std::size_t>(
        std::count(text.begin(), text.end(), '\n'));
}

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

void write_config(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

json result_json(const fs::path& dir) {
    return json::parse(slurp(dir / "result.json"));
}

}  // namespace

TEST_CASE("cli: dispersion emits every family plus mode tables") {
    const fs::path dir = scratch("dispersion_all");
    const CliRun run = run_cli("dispersion --out " + dir.string(), dir);
    REQUIRE(run.exit_code == 0);
    CHECK(contains(run.out, "LHTL1 infrared limit: exact"));

    const std::string csv = slurp(dir / "dispersion.csv");
    CHECK(first_line(csv) == "family,j,k_dx,omega0,epsilon_over_hbar");
    CHECK(line_count(csv) == 401);  // header + 4 families x 100 modes

    for (const char* family : {"LHTL1", "LHTL2", "RHTL1", "RHTL2"}) {
        const std::string modes =
            slurp(dir / (std::string("modes_") + family + ".csv"));
        CHECK(first_line(modes) ==
              "j,k,omega0,chi,epsilon_over_hbar,amp_norm");
        CHECK(line_count(modes) == 201);  // header + 200 quantized modes
    }

    const json result = result_json(dir);
    CHECK(result.at("command") == "dispersion");
    CHECK(result.at("config").at("circuit").at("N") == 200);
    REQUIRE(result.at("families").size() == 4);
    CHECK(result.at("families")[0].contains("ir_limit_exact"));
    CHECK(result.at("families")[1].contains("band_edge_omega0"));
}

TEST_CASE("cli: --family narrows the table and json format embeds rows") {
    const fs::path dir = scratch("dispersion_one");
    const CliRun run = run_cli(
        "dispersion --family LHTL1 --format json --out " + dir.string(), dir);
    REQUIRE(run.exit_code == 0);
    CHECK(!fs::exists(dir / "dispersion.csv"));  // json keeps rows inline
    const json result = result_json(dir);
    REQUIRE(result.at("families").size() == 1);
    CHECK(result.at("families")[0].at("rows").size() == 100);
}

TEST_CASE("cli: sweep writes one deterministic table per family") {
    const fs::path dir_a = scratch("sweep_a");
    const CliRun run = run_cli("sweep --out " + dir_a.string(), dir_a);
    REQUIRE(run.exit_code == 0);
    CHECK(contains(run.out,
                   "LHTL1 analytic-multiscale: 100 modes, N trend decreasing"));
    CHECK(contains(run.out,
                   "RHTL2 analytic-multiscale: 100 modes, N trend increasing"));
    for (const char* family : {"LHTL1", "LHTL2", "RHTL1", "RHTL2"}) {
        const std::string csv =
            slurp(dir_a / (std::string("sweep_") + family + ".csv"));
        CHECK(first_line(csv) ==
              "family,j,omega0,epsilon_over_hbar,Omega,N,log10N,E_over_hbar,"
              "method");
        CHECK(line_count(csv) == 101);
    }

    // Identical configuration must reproduce the tables byte for byte.
    const fs::path dir_b = scratch("sweep_b");
    REQUIRE(run_cli("sweep --out " + dir_b.string(), dir_b).exit_code == 0);
    CHECK(slurp(dir_a / "sweep_LHTL1.csv") == slurp(dir_b / "sweep_LHTL1.csv"));
    CHECK(slurp(dir_a / "sweep_RHTL1.csv") == slurp(dir_b / "sweep_RHTL1.csv"));
}

TEST_CASE("cli: evolve --method both cross-checks the closed form") {
    const fs::path dir = scratch("evolve_both");
    const CliRun run =
        run_cli("evolve --method both --out " + dir.string(), dir);
    REQUIRE(run.exit_code == 0);

    const std::string traj = slurp(dir / "trajectory_LHTL1.csv");
    CHECK(first_line(traj) == "t,re_Q,im_Q,re_Qdot,im_Qdot,wronskian_drift");
    CHECK(line_count(traj) > 10);

    const json result = result_json(dir);
    CHECK(result.at("mode") == 60);
    const json& block = result.at("families")[0];
    REQUIRE(block.at("runs").size() == 2);
    CHECK(block.at("runs")[0].at("method") == "analytic-multiscale");
    CHECK(block.at("runs")[1].at("method") == "numeric-ode");
    CHECK(block.at("runs")[1].at("max_wronskian_drift").get<double>() < 1e-8);
    const double unit = block.at("runs")[1].at("unitarity").get<double>();
    CHECK(std::abs(unit - 1.0) < 1e-6);
    // eta = 0.01 at r*tau = 1: the multiscale error is well under 5%.
    CHECK(block.at("relative_deviation_N").get<double>() < 0.05);
    CHECK(block.at("relative_deviation_N").get<double>() > 0.0);
}

TEST_CASE("cli: the undriven limit reports an identity transform") {
    const fs::path dir = scratch("evolve_still");
    write_config(dir / "config.json", R"({"drive": {"eta": 0.0}})");
    const CliRun run =
        run_cli("evolve --method both --config " + (dir / "config.json").string() +
                    " --out " + dir.string(),
                dir);
    REQUIRE(run.exit_code == 0);
    CHECK(contains(run.out, "undriven"));
    const json result = result_json(dir);
    const json& block = result.at("families")[0];
    CHECK(contains(block.at("note").get<std::string>(), "identity"));
    REQUIRE(block.at("runs").size() == 2);
    CHECK(block.at("runs")[0].at("N").get<double>() == 0.0);
    CHECK(block.at("runs")[1].at("N").get<double>() == 0.0);
}

TEST_CASE("cli: an off-resonant drive creates (almost) nothing") {
    const fs::path dir = scratch("evolve_detuned");
    // 2*omega0_60*1.2 -- 20% above the mode-60 resonance.
    write_config(dir / "config.json",
                 R"({"drive": {"Omega": "3.5889104499714734e11 rad/s",
                               "mode": 60}})");
    const CliRun run =
        run_cli("evolve --method both --config " + (dir / "config.json").string() +
                    " --out " + dir.string(),
                dir);
    REQUIRE(run.exit_code == 0);
    const json result = result_json(dir);
    const json& block = result.at("families")[0];
    const json& analytic = block.at("runs")[0];
    const json& numeric = block.at("runs")[1];
    CHECK(analytic.at("resonant") == false);
    CHECK(analytic.at("N").get<double>() == 0.0);  // frozen closed form
    CHECK(numeric.at("N").get<double>() < 0.1);    // tiny off-resonant ripple
}

TEST_CASE("cli: a bare drive.mode drives that mode on resonance") {
    const fs::path dir = scratch("evolve_mode_only");
    // Regression: the defaulted resonance target (mode 60) must not survive
    // a config that picks a different mode -- that made this exact run
    // silently detuned (analytic N = 0, numeric N ~ 1e-5).
    write_config(dir / "config.json",
                 R"({"circuit": {"family": "RHTL2", "N": 128},
                     "drive": {"eta": 0.008, "mode": 20, "tau": "0.8 ps"}})");
    const CliRun run =
        run_cli("evolve --method both --config " + (dir / "config.json").string() +
                    " --out " + dir.string(),
                dir);
    REQUIRE(run.exit_code == 0);
    const json result = result_json(dir);
    CHECK(result.at("config").at("drive").at("resonant_with_mode") == 20);
    const json& block = result.at("families")[0];
    const json& analytic = block.at("runs")[0];
    CHECK(analytic.at("resonant") == true);
    CHECK(analytic.at("N").get<double>() > 0.01);
    CHECK(block.at("relative_deviation_N").get<double>() < 0.1);
}

TEST_CASE("cli: configuration mistakes exit 1 and name the field") {
    const fs::path dir = scratch("bad_config");
    write_config(dir / "config.json", R"({"circuit": {"C": 0.4}})");
    const CliRun bare = run_cli(
        "sweep --config " + (dir / "config.json").string(), dir);
    CHECK(bare.exit_code == 1);
    CHECK(contains(bare.err, "circuit.C"));

    const CliRun family = run_cli("dispersion --family NOPE", dir);
    CHECK(family.exit_code == 1);
    CHECK(contains(family.err, "family"));

    const CliRun missing = run_cli("sweep --config /nonexistent.json", dir);
    CHECK(missing.exit_code == 1);

    const CliRun none = run_cli("", dir);
    CHECK(none.exit_code == 1);  // a subcommand is required
}

TEST_CASE("cli: verify passes and survives a tolerance change") {
    const fs::path dir = scratch("verify_pass");
    const CliRun run = run_cli("verify --out " + dir.string(), dir);
    REQUIRE(run.exit_code == 0);
    for (const char* name :
         {"mode-normalization", "ladder-commutators", "amplitude-round-trip",
          "bogoliubov-unitarity", "multiscale-convergence"}) {
        CHECK(contains(run.out, std::string("[PASS] ") + name));
    }
    CHECK(contains(run.out, "verification passed"));
    const json result = result_json(dir);
    CHECK(result.at("all_passed") == true);
    CHECK(result.at("checks").size() == 5);

    // Tightening rtol must tighten the measured unitarity residual.
    const fs::path loose_dir = scratch("verify_loose");
    REQUIRE(run_cli("verify --rtol 1e-8 --out " + loose_dir.string(),
                    loose_dir)
                .exit_code == 0);
    auto unitarity_residual = [](const json& doc) {
        for (const json& check : doc.at("checks"))
            if (check.at("name") == "bogoliubov-unitarity")
                return check.at("residual").get<double>();
        return -1.0;
    };
    const double tight = unitarity_residual(result);
    const double loose = unitarity_residual(result_json(loose_dir));
    REQUIRE(tight >= 0.0);
    REQUIRE(loose >= 0.0);
    CHECK(tight < loose);
}

TEST_CASE("cli: verify catches an injected commutator bias") {
    const fs::path dir = scratch("verify_inject");
    const CliRun run = run_cli(
        "verify --inject-chi-error 1e-3 --out " + dir.string(), dir);
    CHECK(run.exit_code == 3);
    CHECK(contains(run.out, "[FAIL] ladder-commutators"));
    CHECK(contains(run.out, "verification FAILED"));
    CHECK(result_json(dir).at("all_passed") == false);
}
