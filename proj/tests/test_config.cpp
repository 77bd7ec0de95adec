// Configuration ingestion: unit-suffixed quantities, JSON block parsing with
// exclusivity rules, drive resolution, re-ingestable resolved output, and the
// deterministic text formatting the CLI files are built from.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "tlinedce/config.hpp"
#include "tlinedce/format.hpp"
#include "tlinedce/lattice.hpp"
#include "tlinedce/quantization.hpp"
#include "tlinedce/units.hpp"

using namespace tlinedce;
using nlohmann::json;

namespace {

std::string first_line(const std::string& text) {
    return text.substr(0, text.find('\n'));
}

bool contains(const std::string& haystack, const std::string& needle) {
    return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("parse_quantity accepts the documented spellings") {
    CHECK(parse_quantity("0.4 pF", Dimension::Capacitance, "c") ==
          doctest::Approx(0.4e-12).epsilon(1e-15));
    CHECK(parse_quantity("60 pH", Dimension::Inductance, "l") ==
          doctest::Approx(60e-12).epsilon(1e-15));
    CHECK(parse_quantity("1.25 uA", Dimension::Current, "i") ==
          doctest::Approx(1.25e-6).epsilon(1e-15));
    CHECK(parse_quantity("1.25 µA", Dimension::Current, "i") ==
          parse_quantity("1.25 uA", Dimension::Current, "i"));
    CHECK(parse_quantity("1 ps", Dimension::Time, "t") ==
          doctest::Approx(1e-12).epsilon(1e-15));
    CHECK(parse_quantity("2 mm", Dimension::Length, "x") ==
          doctest::Approx(2e-3).epsilon(1e-15));
    CHECK(parse_quantity("1 m", Dimension::Length, "x") == 1.0);
    CHECK(parse_quantity("5 Grad/s", Dimension::AngularFrequency, "w") ==
          doctest::Approx(5e9).epsilon(1e-15));
    // Hz spellings are ordinary frequencies and pick up the 2*pi.
    CHECK(parse_quantity("12 GHz", Dimension::AngularFrequency, "w") ==
          doctest::Approx(12e9 * 2.0 * std::numbers::pi).epsilon(1e-15));
    CHECK(parse_quantity("  0.4   pF  ", Dimension::Capacitance, "c") ==
          parse_quantity("0.4 pF", Dimension::Capacitance, "c"));
}

TEST_CASE("parse_quantity rejects bare numbers and junk, naming the field") {
    auto message_of = [](auto fn) -> std::string {
        try {
            fn();
        } catch (const std::invalid_argument& err) {
            return err.what();
        }
        return {};
    };
    const std::string bare = message_of([] {
        parse_quantity("0.4", Dimension::Capacitance, "circuit.C");
    });
    CHECK(contains(bare, "circuit.C"));
    CHECK(contains(bare, dimension_name(Dimension::Capacitance)));

    CHECK_THROWS_AS(parse_quantity("abc pF", Dimension::Capacitance, "c"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("0.4 pX", Dimension::Capacitance, "c"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("", Dimension::Capacitance, "c"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("0.4 pF extra", Dimension::Capacitance, "c"),
                    std::invalid_argument);
    // Unit of the wrong dimension.
    CHECK_THROWS_AS(parse_quantity("60 pH", Dimension::Capacitance, "c"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_quantity("1 s", Dimension::AngularFrequency, "w"),
                    std::invalid_argument);
}

TEST_CASE("quantity_string emits a bit-exact round trip") {
    const struct {
        double value;
        Dimension dim;
    } cases[] = {
        {0.4e-12, Dimension::Capacitance},
        {6e-11, Dimension::Inductance},
        {1.25e-6, Dimension::Current},
        {1e-12, Dimension::Time},
        {1.0, Dimension::Length},
        {1.495379354154781e+11, Dimension::AngularFrequency},
        {2.0 / 3.0, Dimension::Time},  // forces the 17-digit fallback
    };
    for (const auto& c : cases) {
        const std::string text = quantity_string(c.value, c.dim);
        CHECK(parse_quantity(text, c.dim, "roundtrip") == c.value);
    }
}

TEST_CASE("default configuration is the reference parameter set") {
    const RunConfig cfg = default_config();
    CHECK(cfg.circuit.family == CircuitFamily::LHTL1);
    CHECK(cfg.circuit.n_cells == 200);
    CHECK(cfg.circuit.dx == 1.0);
    CHECK(cfg.circuit.C == doctest::Approx(0.4e-12).epsilon(1e-15));
    CHECK(cfg.circuit.C_J == doctest::Approx(0.02e-12).epsilon(1e-15));
    CHECK(cfg.circuit.L == doctest::Approx(60e-12).epsilon(1e-15));
    CHECK(cfg.circuit.I_c == doctest::Approx(1.25e-6).epsilon(1e-15));
    CHECK(cfg.drive.eta == 0.01);
    REQUIRE(cfg.drive.resonant_with_mode.has_value());
    CHECK(*cfg.drive.resonant_with_mode == 60);
    CHECK(!cfg.drive.Omega.has_value());
    REQUIRE(cfg.drive.tau.has_value());
    CHECK(*cfg.drive.tau == doctest::Approx(1e-12).epsilon(1e-15));
    CHECK(!cfg.drive.t_f.has_value());
    CHECK(cfg.run.method == RunMethod::Analytic);
    CHECK(cfg.run.rtol == 1e-10);
    CHECK(cfg.run.atol == 1e-12);
    CHECK(cfg.run.format == OutputFormat::Csv);
    CHECK(cfg.run.families.empty());
}

TEST_CASE("config overrides replace the exclusive defaults") {
    const json doc = json::parse(R"({
        "circuit": {"family": "RHTL2", "N": 64},
        "drive": {"eta": 0.02, "Omega": "5 Grad/s", "t_f": "2 ns",
                  "mode": 7},
        "run": {"method": "both", "format": "json", "out": "outdir",
                "rtol": 1e-8, "atol": 1e-10,
                "families": ["LHTL1", "RHTL2"]}
    })");
    const RunConfig cfg = config_from_json(doc);
    CHECK(cfg.circuit.family == CircuitFamily::RHTL2);
    CHECK(cfg.circuit.n_cells == 64);
    // Explicit Omega/t_f must clear the defaulted counterparts.
    REQUIRE(cfg.drive.Omega.has_value());
    CHECK(!cfg.drive.resonant_with_mode.has_value());
    REQUIRE(cfg.drive.t_f.has_value());
    CHECK(!cfg.drive.tau.has_value());
    CHECK(*cfg.drive.Omega == doctest::Approx(5e9).epsilon(1e-15));
    CHECK(*cfg.drive.t_f == doctest::Approx(2e-9).epsilon(1e-15));
    CHECK(resolved_Omega(cfg) == *cfg.drive.Omega);
    CHECK(resolved_t_f(cfg) == *cfg.drive.t_f);
    CHECK(resolved_mode(cfg) == 7);
    CHECK(cfg.run.method == RunMethod::Both);
    CHECK(cfg.run.format == OutputFormat::Json);
    CHECK(cfg.run.out == "outdir");
    CHECK(cfg.run.rtol == 1e-8);
    REQUIRE(cfg.run.families.size() == 2);
    CHECK(cfg.run.families[0] == CircuitFamily::LHTL1);
    CHECK(cfg.run.families[1] == CircuitFamily::RHTL2);
}

TEST_CASE("a bare drive.mode retargets the resonance, not just evolve") {
    // Without this, the defaulted resonant_with_mode = 60 would survive a
    // user's {"mode": 20} and the evolve run would be silently detuned.
    const RunConfig cfg =
        config_from_json(json::parse(R"({"drive": {"mode": 20}})"));
    REQUIRE(cfg.drive.resonant_with_mode.has_value());
    CHECK(*cfg.drive.resonant_with_mode == 20);
    CHECK(resolved_mode(cfg) == 20);
    CHECK(resolved_Omega(cfg) ==
          doctest::Approx(2.0 * dispersion0(cfg.circuit, 20)).epsilon(1e-15));

    // An explicit resonant_with_mode in the same block keeps the pair split.
    const RunConfig split = config_from_json(
        json::parse(R"({"drive": {"mode": 20, "resonant_with_mode": 60}})"));
    CHECK(*split.drive.resonant_with_mode == 60);
    CHECK(resolved_mode(split) == 20);
}

TEST_CASE("config rejection catalogue") {
    auto reject = [](const char* text, const char* needle) {
        try {
            config_from_json(json::parse(text));
            FAIL_CHECK("expected ConfigError for: " << text);
        } catch (const ConfigError& err) {
            CAPTURE(text);
            CHECK(contains(err.what(), needle));
        }
    };
    reject(R"({"circuits": {}})", "unknown key");
    reject(R"({"circuit": {"Q": 3}})", "unknown key");
    reject(R"({"circuit": {"C": 0.4}})", "circuit.C");
    reject(R"({"circuit": {"C": "0.4 pH"}})", "circuit.C");
    reject(R"({"circuit": {"N": 7}})", "circuit");
    reject(R"({"circuit": {"N": 2.5}})", "integer");
    reject(R"({"circuit": {"family": "XHTL"}})", "family");
    reject(R"({"drive": {"eta": "0.01"}})", "number");
    reject(R"({"drive": {"Omega": "5 Grad/s", "resonant_with_mode": 3}})",
           "mutually exclusive");
    reject(R"({"drive": {"t_f": "1 ns", "tau": "1 ps"}})",
           "mutually exclusive");
    reject(R"({"drive": {"ramp": "soft"}})", "ramp");
    reject(R"({"run": {"method": "magic"}})", "method");
    reject(R"({"run": {"format": "xml"}})", "format");
    reject(R"({"run": {"families": ["LHTL1", "bogus"]}})", "famil");
}

TEST_CASE("drive resolution against the circuit") {
    const RunConfig cfg = default_config();
    const double omega0 = dispersion0(cfg.circuit, 60);
    CHECK(resolved_Omega(cfg) == doctest::Approx(2.0 * omega0).epsilon(1e-15));
    CHECK(omega0 == doctest::Approx(1.495379354154781e+11).epsilon(1e-12));
    CHECK(resolved_t_f(cfg) == doctest::Approx(1e-10).epsilon(1e-15));
    CHECK(resolved_mode(cfg) == 60);

    const DriveSpec drive = make_drive(cfg);
    CHECK(drive.eta == 0.01);
    CHECK(drive.Omega == resolved_Omega(cfg));
    CHECK(drive.t_f == resolved_t_f(cfg));

    // Explicit Omega with no mode label: Omega resolves, mode does not.
    RunConfig no_mode = default_config();
    no_mode.drive.Omega = 3e11;
    no_mode.drive.resonant_with_mode.reset();
    CHECK(resolved_Omega(no_mode) == 3e11);
    CHECK_THROWS_AS(resolved_mode(no_mode), ConfigError);

    // Out-of-range drive parameters surface as ConfigError via make_drive.
    RunConfig hot = default_config();
    hot.drive.eta = 0.5;
    CHECK_THROWS_AS(make_drive(hot), ConfigError);

    RunConfig bad_mode = default_config();
    bad_mode.drive.resonant_with_mode = 0;
    CHECK_THROWS_AS(resolved_Omega(bad_mode), ConfigError);
}

TEST_CASE("resolved config re-ingests to the same run") {
    RunConfig cfg = default_config();
    cfg.circuit.family = CircuitFamily::LHTL2;
    cfg.run.method = RunMethod::Numeric;
    cfg.run.families = {CircuitFamily::LHTL2, CircuitFamily::RHTL1};

    const nlohmann::ordered_json doc = resolved_config_json(cfg);
    CHECK(doc.at("drive").contains("Omega_resolved"));
    CHECK(doc.at("drive").contains("t_f_resolved"));
    CHECK(doc.at("drive").contains("resonant_with_mode"));
    CHECK(doc.at("drive").contains("tau"));

    const RunConfig again = config_from_json(json::parse(doc.dump()));
    CHECK(again.circuit.family == cfg.circuit.family);
    CHECK(again.circuit.C == cfg.circuit.C);
    CHECK(again.circuit.I_c == cfg.circuit.I_c);
    CHECK(again.drive.eta == cfg.drive.eta);
    REQUIRE(again.drive.tau.has_value());
    CHECK(*again.drive.tau == *cfg.drive.tau);
    CHECK(again.run.method == RunMethod::Numeric);
    REQUIRE(again.run.families.size() == 2);
    CHECK(resolved_Omega(again) == resolved_Omega(cfg));
    CHECK(resolved_t_f(again) == resolved_t_f(cfg));

    // A result file wraps the config; siblings are ignored on re-ingestion.
    json result;
    result["config"] = json::parse(doc.dump());
    result["results"] = json::array({1, 2, 3});
    const RunConfig from_result = config_from_json(result);
    CHECK(from_result.circuit.family == cfg.circuit.family);
    CHECK(resolved_Omega(from_result) == resolved_Omega(cfg));
}

TEST_CASE("degenerate configs still emit a resolved document") {
    RunConfig cfg = default_config();
    cfg.drive.eta = 0.0;  // undriven: tau can no longer fix t_f
    const nlohmann::ordered_json doc = resolved_config_json(cfg);
    CHECK(!doc.at("drive").contains("t_f_resolved"));
    CHECK(doc.at("drive").contains("Omega_resolved"));
}

TEST_CASE("load_config failure modes name the path") {
    try {
        load_config("/nonexistent/tline.json");
        FAIL_CHECK("expected ConfigError");
    } catch (const ConfigError& err) {
        CHECK(contains(err.what(), "/nonexistent/tline.json"));
    }

    const std::string path = "/tmp/tline_cfg_broken.json";
    write_text_file(path, "{ not json ");
    CHECK_THROWS_AS(load_config(path), ConfigError);
    std::remove(path.c_str());

    const std::string good = "/tmp/tline_cfg_good.json";
    write_text_file(good, R"({"drive": {"eta": 0.02}})");
    CHECK(load_config(good).drive.eta == 0.02);
    std::remove(good.c_str());
}

TEST_CASE("format_sci renders 12 significant digits and inf tokens") {
    CHECK(format_sci(1.495379354154781e+11) == "1.49537935415e+11");
    CHECK(format_sci(0.0) == "0.00000000000e+00");
    CHECK(format_sci(-2.5e-3) == "-2.50000000000e-03");
    CHECK(format_sci(std::numeric_limits<double>::infinity()) == "inf");
    CHECK(format_sci(-std::numeric_limits<double>::infinity()) == "-inf");
    CHECK(format_sci(std::nan("")) == "nan");
}

TEST_CASE("CSV headers are part of the contract") {
    SweepResult sweep;
    sweep.family = CircuitFamily::LHTL1;
    SweepRow row;
    row.j = 1;
    row.omega0 = 1e12;
    row.epsilon_over_hbar = 5e10;
    row.Omega = 2e12;
    row.N = std::numeric_limits<double>::infinity();
    row.log10_N = 346.8;
    row.E_over_hbar = std::numeric_limits<double>::infinity();
    row.method = EvolveMethod::AnalyticMultiscale;
    sweep.rows.push_back(row);
    const std::string sweep_text = sweep_csv(sweep);
    CHECK(first_line(sweep_text) ==
          "family,j,omega0,epsilon_over_hbar,Omega,N,log10N,E_over_hbar,method");
    CHECK(contains(sweep_text, "LHTL1,1,"));
    CHECK(contains(sweep_text, ",inf,"));  // overflowed N keeps its token
    CHECK(contains(sweep_text, "analytic-multiscale"));

    CircuitSpec spec;  // defaults
    const std::string disp_text = dispersion_csv({dispersion_table(spec)});
    CHECK(first_line(disp_text) == "family,j,k_dx,omega0,epsilon_over_hbar");
    // header + 100 rows + trailing newline
    CHECK(std::count(disp_text.begin(), disp_text.end(), '\n') == 101);

    const ModeSet modes(spec);
    const std::string mode_text = mode_table_csv(modes);
    CHECK(first_line(mode_text) ==
          "j,k,omega0,chi,epsilon_over_hbar,amp_norm");
    CHECK(std::count(mode_text.begin(), mode_text.end(), '\n') == 201);

    ModeTrajectory traj;
    traj.t = {0.0, 1e-12};
    traj.Q = {{1.0, 0.0}, {0.9, -0.1}};
    traj.Qdot = {{0.0, -1.0}, {0.1, -0.9}};
    traj.wronskian_drift = {0.0, 1e-12};
    const std::string traj_text = trajectory_csv(traj);
    CHECK(first_line(traj_text) ==
          "t,re_Q,im_Q,re_Qdot,im_Qdot,wronskian_drift");
    CHECK(std::count(traj_text.begin(), traj_text.end(), '\n') == 3);
}

TEST_CASE("write_text_file fails loudly") {
    CHECK_THROWS_AS(write_text_file("/nonexistent_dir_xyz/out.txt", "x"),
                    std::runtime_error);
}
