// tline-dce: dynamical-Casimir particle creation in SQUID-loaded
// transmission-line lattices.
//
// Subcommands:
//   dispersion  static spectra (and quantized mode tables) of the families
//   evolve      single-mode drive: closed-form and/or numeric Bogoliubov data
//   sweep       per-mode resonant particle-creation sweep across the zone
//   verify      structural self-checks (normalization, commutators, ...)
//
// Every command writes result.json into --out with the fully resolved config
// embedded; feeding that file back through --config reproduces the run.
// Exit codes: 0 success, 1 config error, 2 numerical failure, 3 verification
// failure.

#include <complex>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tlinedce/config.hpp"
#include "tlinedce/dynamics.hpp"
#include "tlinedce/format.hpp"
#include "tlinedce/lattice.hpp"
#include "tlinedce/observables.hpp"
#include "tlinedce/ode.hpp"
#include "tlinedce/quantization.hpp"
#include "tlinedce/verify.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace tlinedce;

struct CliState {
    std::string config_path;
    std::string families;  // comma-separated override
    std::string method;
    std::string out;
    std::string format;
    double rtol = -1.0;
    double atol = -1.0;
    double inject_chi_error = 0.0;  // verify negative-control hook
};

void add_common_options(CLI::App* cmd, CliState& state) {
    cmd->add_option("--config", state.config_path,
                    "JSON config file (defaults reproduce the reference "
                    "parameter set)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--family", state.families,
                    "family or comma-separated list: LHTL1,LHTL2,RHTL1,RHTL2");
    cmd->add_option("--method", state.method,
                    "analytic | numeric | both");
    cmd->add_option("--out", state.out, "output directory");
    cmd->add_option("--format", state.format, "csv | json");
    cmd->add_option("--rtol", state.rtol, "integrator relative tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--atol", state.atol, "integrator absolute tolerance")
        ->check(CLI::PositiveNumber);
}

std::vector<std::string> split_csv_list(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (begin <= text.size()) {
        const std::size_t comma = text.find(',', begin);
        const std::size_t end = comma == std::string::npos ? text.size() : comma;
        if (end > begin) parts.push_back(text.substr(begin, end - begin));
        if (comma == std::string::npos) break;
        begin = comma + 1;
    }
    return parts;
}

RunConfig build_config(const CliState& state) {
    RunConfig config =
        state.config_path.empty() ? default_config() : load_config(state.config_path);
    if (!state.families.empty()) {
        config.run.families.clear();
        for (const std::string& name : split_csv_list(state.families))
            config.run.families.push_back(family_from_name(name));
        if (config.run.families.empty())
            throw ConfigError("--family: empty family list");
        config.circuit.family = config.run.families.front();
    }
    if (!state.method.empty()) {
        if (state.method == "analytic")
            config.run.method = RunMethod::Analytic;
        else if (state.method == "numeric")
            config.run.method = RunMethod::Numeric;
        else if (state.method == "both")
            config.run.method = RunMethod::Both;
        else
            throw ConfigError(
                "--method: expected analytic, numeric or both, got '" +
                state.method + "'");
    }
    if (!state.out.empty()) config.run.out = state.out;
    if (!state.format.empty()) {
        if (state.format == "csv")
            config.run.format = OutputFormat::Csv;
        else if (state.format == "json")
            config.run.format = OutputFormat::Json;
        else
            throw ConfigError("--format: expected csv or json, got '" +
                              state.format + "'");
    }
    if (state.rtol > 0.0) config.run.rtol = state.rtol;
    if (state.atol > 0.0) config.run.atol = state.atol;
    return config;
}

// dispersion/sweep span all four families unless narrowed; evolve/verify act
// on the configured circuit.
std::vector<CircuitFamily> table_families(const RunConfig& config) {
    if (!config.run.families.empty()) return config.run.families;
    return {CircuitFamily::LHTL1, CircuitFamily::LHTL2, CircuitFamily::RHTL1,
            CircuitFamily::RHTL2};
}

CircuitSpec spec_for(const RunConfig& config, CircuitFamily family) {
    CircuitSpec spec = config.circuit;
    spec.family = family;
    return spec;
}

void print_warnings(const CircuitSpec& spec) {
    for (const std::string& line : circuit_warnings(spec))
        std::cerr << "warning: " << family_name(spec.family) << ": " << line
                  << '\n';
}

std::string out_path(const RunConfig& config, const std::string& name) {
    fs::create_directories(config.run.out);
    return (fs::path(config.run.out) / name).string();
}

ordered_json result_skeleton(const char* command, const RunConfig& config) {
    ordered_json doc;
    doc["command"] = command;
    doc["config"] = resolved_config_json(config);
    doc["outputs"] = ordered_json::array();
    return doc;
}

void write_result(const RunConfig& config, ordered_json& doc) {
    const std::string path = out_path(config, "result.json");
    doc["outputs"].push_back(path);
    write_text_file(path, doc.dump(2) + "\n");
    std::cout << "wrote " << path << '\n';
}

void emit_table(const RunConfig& config, ordered_json& result,
                const std::string& name, const std::string& csv) {
    const std::string path = out_path(config, name);
    write_text_file(path, csv);
    result["outputs"].push_back(path);
    std::cout << "wrote " << path << '\n';
}

ordered_json complex_json(std::complex<double> z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

// ---------------------------------------------------------------- dispersion

ordered_json dispersion_rows_json(const DispersionTable& table) {
    ordered_json rows = ordered_json::array();
    for (const DispersionRow& row : table.rows)
        rows.push_back(ordered_json{{"j", row.j},
                                    {"k_dx", row.k_dx},
                                    {"omega0", row.omega0},
                                    {"epsilon_over_hbar", row.epsilon_over_hbar}});
    return rows;
}

int run_dispersion(const RunConfig& config) {
    const std::vector<CircuitFamily> families = table_families(config);
    std::vector<CircuitSpec> specs;
    for (CircuitFamily family : families) {
        specs.push_back(spec_for(config, family));
        print_warnings(specs.back());
    }
    const std::vector<DispersionTable> tables = dispersion_table(specs);

    ordered_json result = result_skeleton("dispersion", config);
    ordered_json summary = ordered_json::array();
    for (std::size_t i = 0; i < specs.size(); ++i) {
        const CircuitSpec& spec = specs[i];
        ordered_json entry;
        entry["family"] = family_name(spec.family);
        entry["band_edge_omega0"] = dispersion0(spec, spec.n_cells / 2);
        if (spec.family == CircuitFamily::LHTL1) {
            const InfraredLimit ir = infrared_limit(spec);
            entry["ir_limit_exact"] = ir.exact;
            entry["ir_limit_approx"] = ir.approx;
            std::cout << "LHTL1 infrared limit: exact " << format_sci(ir.exact)
                      << " rad/s, approximate " << format_sci(ir.approx)
                      << " rad/s (relative gap "
                      << format_sci(ir.approx / ir.exact - 1.0) << ")\n";
        }
        if (config.run.format == OutputFormat::Json)
            entry["rows"] = dispersion_rows_json(tables[i]);
        summary.push_back(entry);
    }
    result["families"] = summary;

    if (config.run.format == OutputFormat::Csv) {
        emit_table(config, result, "dispersion.csv", dispersion_csv(tables));
        for (const CircuitSpec& spec : specs) {
            const ModeSet modes(spec);
            emit_table(config, result,
                       std::string("modes_") + family_name(spec.family) + ".csv",
                       mode_table_csv(modes));
        }
    }
    write_result(config, result);
    return 0;
}

// --------------------------------------------------------------------- sweep

std::string csv_body(const std::string& csv) {
    const std::size_t eol = csv.find('\n');
    return eol == std::string::npos ? std::string() : csv.substr(eol + 1);
}

ordered_json sweep_rows_json(const SweepResult& sweep) {
    ordered_json rows = ordered_json::array();
    for (const SweepRow& row : sweep.rows)
        rows.push_back(ordered_json{{"j", row.j},
                                    {"omega0", row.omega0},
                                    {"epsilon_over_hbar", row.epsilon_over_hbar},
                                    {"Omega", row.Omega},
                                    {"N", row.N},
                                    {"log10N", row.log10_N},
                                    {"E_over_hbar", row.E_over_hbar},
                                    {"method", method_name(row.method)}});
    return rows;
}

ordered_json sweep_summary_json(const SweepResult& sweep, bool with_rows) {
    ordered_json entry;
    entry["family"] = family_name(sweep.family);
    entry["method"] = method_name(sweep.rows.empty()
                                      ? EvolveMethod::AnalyticMultiscale
                                      : sweep.rows.front().method);
    entry["tau"] = sweep.tau;
    entry["eta"] = sweep.eta;
    entry["modes"] = sweep.rows.size();
    entry["trend_N"] = monotonicity_name(sweep.trend_N);
    entry["trend_E"] = monotonicity_name(sweep.trend_E);
    if (with_rows) entry["rows"] = sweep_rows_json(sweep);
    return entry;
}

int run_sweep(const RunConfig& config) {
    const std::vector<CircuitFamily> families = table_families(config);
    const double t_f = resolved_t_f(config);

    SweepOptions opt;
    opt.eta = config.drive.eta;
    opt.tau = config.drive.eta * t_f;
    opt.rtol = config.run.rtol;
    opt.atol = config.run.atol;

    DriveSpec representative;
    representative.eta = config.drive.eta;
    representative.Omega = 1.0;
    representative.t_f = 1.0;
    for (const std::string& line : drive_warnings(representative))
        std::cerr << "warning: " << line << '\n';

    std::vector<EvolveMethod> methods;
    if (config.run.method != RunMethod::Numeric)
        methods.push_back(EvolveMethod::AnalyticMultiscale);
    if (config.run.method != RunMethod::Analytic)
        methods.push_back(EvolveMethod::NumericOde);

    ordered_json result = result_skeleton("sweep", config);
    ordered_json summary = ordered_json::array();
    const bool json_rows = config.run.format == OutputFormat::Json;
    for (CircuitFamily family : families) {
        const CircuitSpec spec = spec_for(config, family);
        print_warnings(spec);
        std::string csv;
        for (std::size_t m = 0; m < methods.size(); ++m) {
            opt.method = methods[m];
            const SweepResult sweep = sweep_spectrum(spec, opt);
            summary.push_back(sweep_summary_json(sweep, json_rows));
            csv += m == 0 ? sweep_csv(sweep) : csv_body(sweep_csv(sweep));
            std::cout << family_name(family) << ' '
                      << method_name(methods[m]) << ": " << sweep.rows.size()
                      << " modes, N trend " << monotonicity_name(sweep.trend_N)
                      << ", E trend " << monotonicity_name(sweep.trend_E)
                      << '\n';
        }
        if (!json_rows)
            emit_table(config, result,
                       std::string("sweep_") + family_name(family) + ".csv",
                       csv);
    }
    result["families"] = summary;
    write_result(config, result);
    return 0;
}

// -------------------------------------------------------------------- evolve

ordered_json bogoliubov_json(const CircuitSpec& spec,
                             const BogoliubovResult& res) {
    ordered_json entry;
    entry["method"] = method_name(res.method);
    entry["alpha"] = complex_json(res.alpha);
    entry["beta"] = complex_json(res.beta);
    entry["N"] = res.particle_number();
    entry["unitarity"] = res.unitarity();
    entry["resonant"] = res.resonant;
    entry["tau"] = res.tau;
    entry["E_over_hbar"] =
        mode_energy(spec, res.mode, res.particle_number()) /
        spec.constants.hbar;
    return entry;
}

ordered_json trajectory_rows_json(const ModeTrajectory& traj) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < traj.t.size(); ++i)
        rows.push_back(ordered_json{{"t", traj.t[i]},
                                    {"re_Q", traj.Q[i].real()},
                                    {"im_Q", traj.Q[i].imag()},
                                    {"re_Qdot", traj.Qdot[i].real()},
                                    {"im_Qdot", traj.Qdot[i].imag()},
                                    {"wronskian_drift", traj.wronskian_drift[i]}});
    return rows;
}

int run_evolve(const RunConfig& config) {
    std::vector<CircuitFamily> families = config.run.families;
    if (families.empty()) families = {config.circuit.family};
    const int mode = resolved_mode(config);

    ordered_json result = result_skeleton("evolve", config);
    result["mode"] = mode;
    ordered_json blocks = ordered_json::array();

    for (CircuitFamily family : families) {
        RunConfig local = config;
        local.circuit.family = family;
        const CircuitSpec& spec = local.circuit;
        print_warnings(spec);

        ordered_json block;
        block["family"] = family_name(spec.family);
        const double omega0 = dispersion0(spec, mode);
        block["omega0"] = omega0;
        block["epsilon_over_hbar"] =
            eigenenergy(spec, mode, josephson_E0(spec)) / spec.constants.hbar;

        if (config.drive.eta == 0.0) {
            // Undriven limit: E(t) = E0 identically, so the transform is the
            // identity for both routes. Emitted directly -- the drive
            // validators insist on eta > 0 for an actual modulation.
            block["note"] = "eta = 0: undriven, identity transform";
            ordered_json runs = ordered_json::array();
            if (config.run.method != RunMethod::Numeric)
                runs.push_back(bogoliubov_json(
                    spec, BogoliubovResult{mode, 1.0, 0.0,
                                           EvolveMethod::AnalyticMultiscale,
                                           0.0, false}));
            if (config.run.method != RunMethod::Analytic)
                runs.push_back(bogoliubov_json(
                    spec, BogoliubovResult{mode, 1.0, 0.0,
                                           EvolveMethod::NumericOde, 0.0,
                                           false}));
            block["runs"] = runs;
            blocks.push_back(block);
            std::cout << family_name(family) << " mode " << mode
                      << ": undriven (eta = 0), N = 0\n";
            continue;
        }

        const DriveSpec drive = make_drive(local);
        for (const std::string& line : drive_warnings(drive))
            std::cerr << "warning: " << line << '\n';
        block["Omega"] = drive.Omega;
        block["t_f"] = drive.t_f;

        ordered_json runs = ordered_json::array();
        double n_analytic = -1.0;
        double n_numeric = -1.0;
        if (config.run.method != RunMethod::Numeric) {
            const BogoliubovResult analytic = evolve_analytic(spec, drive, mode);
            n_analytic = analytic.particle_number();
            runs.push_back(bogoliubov_json(spec, analytic));
        }
        if (config.run.method != RunMethod::Analytic) {
            IntegrateOptions iopt;
            iopt.rtol = config.run.rtol;
            iopt.atol = config.run.atol;
            const ModeTrajectory traj = integrate_mode(spec, drive, mode, iopt);
            const auto [A, B] = extract_AB_numeric(traj, omega0, drive.t_f);
            const BogoliubovResult numeric = bogoliubov_from_AB(
                A, B, omega0, mode, EvolveMethod::NumericOde,
                drive.eta * drive.t_f,
                is_resonant(drive, omega0, 0.5 * drive.eta));
            n_numeric = numeric.particle_number();
            ordered_json entry = bogoliubov_json(spec, numeric);
            entry["max_wronskian_drift"] = traj.max_wronskian_drift;
            runs.push_back(entry);
            if (config.run.format == OutputFormat::Json)
                block["trajectory"] = trajectory_rows_json(traj);
            else
                emit_table(config, result,
                           std::string("trajectory_") + family_name(family) +
                               ".csv",
                           trajectory_csv(traj));
        }
        block["runs"] = runs;

        std::cout << family_name(family) << " mode " << mode << ":";
        if (n_analytic >= 0.0)
            std::cout << " N_analytic " << format_sci(n_analytic);
        if (n_numeric >= 0.0)
            std::cout << " N_numeric " << format_sci(n_numeric);
        if (n_analytic >= 0.0 && n_numeric >= 0.0) {
            const double deviation = n_numeric != 0.0
                                         ? std::abs(n_analytic - n_numeric) /
                                               n_numeric
                                         : std::abs(n_analytic - n_numeric);
            block["relative_deviation_N"] = deviation;
            std::cout << " deviation " << format_sci(deviation);
        }
        std::cout << '\n';
        blocks.push_back(block);
    }
    result["families"] = blocks;
    write_result(config, result);
    return 0;
}

// -------------------------------------------------------------------- verify

int run_verify(const RunConfig& config, double inject_chi_error) {
    VerifyOptions opt;
    opt.rtol = config.run.rtol;
    opt.atol = config.run.atol;
    opt.chi_perturbation = inject_chi_error;
    const std::vector<CheckResult> checks = run_verification(config.circuit, opt);

    ordered_json result = result_skeleton("verify", config);
    ordered_json rows = ordered_json::array();
    for (const CheckResult& check : checks) {
        std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name
                  << "  residual " << format_sci(check.residual) << "  "
                  << check.detail << '\n';
        rows.push_back(ordered_json{{"name", check.name},
                                    {"pass", check.pass},
                                    {"residual", check.residual},
                                    {"detail", check.detail}});
    }
    result["checks"] = rows;
    const bool ok = all_passed(checks);
    result["all_passed"] = ok;
    write_result(config, result);
    std::cout << (ok ? "verification passed" : "verification FAILED") << '\n';
    return ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "particle creation in modulated superconducting transmission-line "
        "lattices"};
    app.require_subcommand(1);

    CliState state;
    CLI::App* dispersion_cmd = app.add_subcommand(
        "dispersion", "static spectra and quantized mode tables");
    CLI::App* evolve_cmd = app.add_subcommand(
        "evolve", "drive one mode and extract its Bogoliubov coefficients");
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "resonant particle-creation sweep over every mode");
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "run the structural self-checks");
    add_common_options(dispersion_cmd, state);
    add_common_options(evolve_cmd, state);
    add_common_options(sweep_cmd, state);
    add_common_options(verify_cmd, state);
    // Negative control for the verification suite: biases the chi weight in
    // the commutator check, which must then fail. Deliberately undocumented
    // in --help.
    verify_cmd->add_option("--inject-chi-error", state.inject_chi_error)
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? 0 : 1;
    }

    try {
        const RunConfig config = build_config(state);
        if (app.got_subcommand(dispersion_cmd)) return run_dispersion(config);
        if (app.got_subcommand(sweep_cmd)) return run_sweep(config);
        if (app.got_subcommand(evolve_cmd)) return run_evolve(config);
        return run_verify(config, state.inject_chi_error);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 1;
    } catch (const IntegrationError& err) {
        std::cerr << "numerical failure: " << err.what() << " (last good t = "
                  << format_sci(err.last_good_time()) << " s)\n";
        return 2;
    } catch (const std::invalid_argument& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 1;
    } catch (const std::domain_error& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 1;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
}
