#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tlinedce/circuit.hpp"
#include "tlinedce/drive.hpp"
#include "tlinedce/dynamics.hpp"

// Run configuration: a JSON document with three blocks,
//
//   {
//     "circuit": { "family": "LHTL1", "N": 200, "delta_x": "1 m",
//                  "C": "0.4 pF", "C_J": "0.02 pF", "L": "60 pH",
//                  "I_c": "1.25 uA" },
//     "drive":   { "eta": 0.01, "resonant_with_mode": 60, "tau": "1 ps",
//                  "ramp": "hard" },
//     "run":     { "method": "analytic", "rtol": 1e-10, "atol": 1e-12,
//                  "out": ".", "format": "csv" }
//   }
//
// Dimensioned entries are unit-suffixed strings (see units.hpp); bare
// numbers there are configuration errors. The drive block takes exactly one
// of Omega / resonant_with_mode and exactly one of t_f / tau (tau = eta*t_f).
// Defaults reproduce the reference parameter set (C = 0.4 pF, C_J = 0.02 pF,
// L = 60 pH, I_c = 1.25 uA, N = 200, eta = 0.01, tau = 1 ps, mode 60), so
// every subcommand runs meaningfully with no config at all.
//
// Result files emitted by the CLI embed the fully resolved SI config under a
// "config" key; load_config accepts such a result file directly, so a run
// can be reproduced from its own output.

namespace tlinedce {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct DriveConfig {
    double eta = 0.01;
    std::optional<double> Omega;            // [rad/s]; exclusive with ...
    std::optional<int> resonant_with_mode;  // ... mode-resonant drive
    std::optional<double> t_f;              // [s]; exclusive with ...
    std::optional<double> tau;              // ... slow time eta*t_f [s]
    RampKind ramp = RampKind::Hard;
    double ramp_window = 0.0;               // [s], cosine ramp only
    // Mode evolved by the evolve command; defaults to resonant_with_mode.
    // Conversely, a config that sets mode without Omega or
    // resonant_with_mode drives that mode on resonance.
    std::optional<int> mode;
};

enum class RunMethod { Analytic, Numeric, Both };
enum class OutputFormat { Csv, Json };

const char* run_method_name(RunMethod m);
const char* output_format_name(OutputFormat f);

struct RunOptions {
    RunMethod method = RunMethod::Analytic;
    double rtol = 1e-10;
    double atol = 1e-12;
    std::string out = ".";
    OutputFormat format = OutputFormat::Csv;
    // Families for sweep/dispersion; empty means all four. evolve/verify use
    // circuit.family.
    std::vector<CircuitFamily> families;
};

struct RunConfig {
    CircuitSpec circuit;
    DriveConfig drive;
    RunOptions run;
};

// Reference defaults (see block comment above).
RunConfig default_config();

// Parses a config document; unknown keys, missing units, violated
// exclusivity rules and malformed values raise ConfigError naming the field.
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

// Fully resolved, re-ingestable form: SI-unit quantity strings, Omega and
// t_f made explicit alongside their source fields.
nlohmann::ordered_json resolved_config_json(const RunConfig& config);

// Drive resolution against the circuit: Omega from resonant_with_mode
// (2*omega0_j at E0), t_f from tau/eta. Throws ConfigError when the block
// cannot be resolved (e.g. no mode for an explicit-Omega evolve).
double resolved_Omega(const RunConfig& config);
double resolved_t_f(const RunConfig& config);
int resolved_mode(const RunConfig& config);
DriveSpec make_drive(const RunConfig& config);

}  // namespace tlinedce
