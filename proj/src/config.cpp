#include "tlinedce/config.hpp"

#include <fstream>
#include <initializer_list>
#include <string_view>

#include "tlinedce/lattice.hpp"
#include "tlinedce/units.hpp"

namespace tlinedce {

namespace {

using nlohmann::json;

void require_object(const json& node, const std::string& name) {
    if (!node.is_object())
        throw ConfigError(name + ": expected a JSON object");
}

void reject_unknown_keys(const json& block, const std::string& name,
                         std::initializer_list<std::string_view> allowed) {
    for (const auto& item : block.items()) {
        bool known = false;
        for (std::string_view key : allowed)
            if (item.key() == key) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError(name + ": unknown key '" + item.key() + "'");
    }
}

// Dimensioned entries must be quantity strings; a bare number here is the
// exact mistake the unit suffixes exist to catch, so name it explicitly.
double get_quantity(const json& block, const std::string& key, Dimension dim,
                    const std::string& block_name) {
    const json& node = block.at(key);
    const std::string field = block_name + "." + key;
    if (node.is_number())
        throw ConfigError(field + ": dimensioned values must be unit-suffixed "
                          "strings (e.g. \"" +
                          quantity_string(node.get<double>(), dim) + "\")");
    if (!node.is_string())
        throw ConfigError(field + ": expected a quantity string");
    try {
        return parse_quantity(node.get<std::string>(), dim, field);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(err.what());
    }
}

double get_number(const json& block, const std::string& key,
                  const std::string& block_name) {
    const json& node = block.at(key);
    if (!node.is_number())
        throw ConfigError(block_name + "." + key + ": expected a number");
    return node.get<double>();
}

int get_integer(const json& block, const std::string& key,
                const std::string& block_name) {
    const json& node = block.at(key);
    if (!node.is_number_integer())
        throw ConfigError(block_name + "." + key + ": expected an integer");
    return node.get<int>();
}

std::string get_string(const json& block, const std::string& key,
                       const std::string& block_name) {
    const json& node = block.at(key);
    if (!node.is_string())
        throw ConfigError(block_name + "." + key + ": expected a string");
    return node.get<std::string>();
}

void apply_circuit_block(const json& block, CircuitSpec& spec) {
    require_object(block, "circuit");
    reject_unknown_keys(block, "circuit",
                        {"family", "N", "delta_x", "C", "C_J", "L", "I_c"});
    if (block.contains("family")) {
        try {
            spec.family = family_from_name(get_string(block, "family", "circuit"));
        } catch (const std::invalid_argument& err) {
            throw ConfigError(std::string("circuit.family: ") + err.what());
        }
    }
    if (block.contains("N")) spec.n_cells = get_integer(block, "N", "circuit");
    if (block.contains("delta_x"))
        spec.dx = get_quantity(block, "delta_x", Dimension::Length, "circuit");
    if (block.contains("C"))
        spec.C = get_quantity(block, "C", Dimension::Capacitance, "circuit");
    if (block.contains("C_J"))
        spec.C_J = get_quantity(block, "C_J", Dimension::Capacitance, "circuit");
    if (block.contains("L"))
        spec.L = get_quantity(block, "L", Dimension::Inductance, "circuit");
    if (block.contains("I_c"))
        spec.I_c = get_quantity(block, "I_c", Dimension::Current, "circuit");
    try {
        validate_circuit(spec);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("circuit: ") + err.what());
    }
}

void apply_drive_block(const json& block, DriveConfig& drive) {
    require_object(block, "drive");
    reject_unknown_keys(block, "drive",
                        {"eta", "Omega", "resonant_with_mode", "t_f", "tau",
                         "ramp", "ramp_window", "mode",
                         // informational echoes written by resolved_config_json;
                         // recomputed from the source fields on re-ingestion
                         "Omega_resolved", "t_f_resolved"});
    if (block.contains("eta")) drive.eta = get_number(block, "eta", "drive");
    if (block.contains("Omega") && block.contains("resonant_with_mode"))
        throw ConfigError(
            "drive: Omega and resonant_with_mode are mutually exclusive");
    if (block.contains("Omega")) {
        drive.Omega =
            get_quantity(block, "Omega", Dimension::AngularFrequency, "drive");
        drive.resonant_with_mode.reset();
    }
    if (block.contains("resonant_with_mode")) {
        drive.resonant_with_mode =
            get_integer(block, "resonant_with_mode", "drive");
        drive.Omega.reset();
    }
    if (block.contains("t_f") && block.contains("tau"))
        throw ConfigError("drive: t_f and tau are mutually exclusive");
    if (block.contains("t_f")) {
        drive.t_f = get_quantity(block, "t_f", Dimension::Time, "drive");
        drive.tau.reset();
    }
    if (block.contains("tau")) {
        drive.tau = get_quantity(block, "tau", Dimension::Time, "drive");
        drive.t_f.reset();
    }
    if (block.contains("ramp")) {
        const std::string name = get_string(block, "ramp", "drive");
        if (name == "hard")
            drive.ramp = RampKind::Hard;
        else if (name == "cosine")
            drive.ramp = RampKind::Cosine;
        else
            throw ConfigError("drive.ramp: expected \"hard\" or \"cosine\", got \"" +
                              name + "\"");
    }
    if (block.contains("ramp_window"))
        drive.ramp_window =
            get_quantity(block, "ramp_window", Dimension::Time, "drive");
    if (block.contains("mode")) {
        drive.mode = get_integer(block, "mode", "drive");
        // A bare mode implies resonance with that mode; only an explicit
        // Omega or resonant_with_mode in the same block separates the two.
        // Otherwise the built-in default (mode 60) would silently detune a
        // user-chosen mode.
        if (!block.contains("Omega") && !block.contains("resonant_with_mode"))
            drive.resonant_with_mode = drive.mode;
    }
}

void apply_run_block(const json& block, RunOptions& run) {
    require_object(block, "run");
    reject_unknown_keys(block, "run",
                        {"method", "rtol", "atol", "out", "format", "families"});
    if (block.contains("method")) {
        const std::string name = get_string(block, "method", "run");
        if (name == "analytic")
            run.method = RunMethod::Analytic;
        else if (name == "numeric")
            run.method = RunMethod::Numeric;
        else if (name == "both")
            run.method = RunMethod::Both;
        else
            throw ConfigError(
                "run.method: expected \"analytic\", \"numeric\" or \"both\", "
                "got \"" + name + "\"");
    }
    if (block.contains("rtol")) {
        run.rtol = get_number(block, "rtol", "run");
        if (run.rtol <= 0.0) throw ConfigError("run.rtol: must be positive");
    }
    if (block.contains("atol")) {
        run.atol = get_number(block, "atol", "run");
        if (run.atol <= 0.0) throw ConfigError("run.atol: must be positive");
    }
    if (block.contains("out")) run.out = get_string(block, "out", "run");
    if (block.contains("format")) {
        const std::string name = get_string(block, "format", "run");
        if (name == "csv")
            run.format = OutputFormat::Csv;
        else if (name == "json")
            run.format = OutputFormat::Json;
        else
            throw ConfigError("run.format: expected \"csv\" or \"json\", got \"" +
                              name + "\"");
    }
    if (block.contains("families")) {
        const json& list = block.at("families");
        if (!list.is_array())
            throw ConfigError("run.families: expected an array of family names");
        run.families.clear();
        for (const json& entry : list) {
            if (!entry.is_string())
                throw ConfigError("run.families: expected an array of family names");
            try {
                run.families.push_back(family_from_name(entry.get<std::string>()));
            } catch (const std::invalid_argument& err) {
                throw ConfigError(std::string("run.families: ") + err.what());
            }
        }
    }
}

}  // namespace

const char* run_method_name(RunMethod m) {
    switch (m) {
        case RunMethod::Analytic: return "analytic";
        case RunMethod::Numeric: return "numeric";
        case RunMethod::Both: return "both";
    }
    return "unknown";
}

const char* output_format_name(OutputFormat f) {
    switch (f) {
        case OutputFormat::Csv: return "csv";
        case OutputFormat::Json: return "json";
    }
    return "unknown";
}

RunConfig default_config() {
    RunConfig config;
    config.drive.eta = 0.01;
    config.drive.resonant_with_mode = 60;
    config.drive.tau = 1e-12;
    return config;
}

RunConfig config_from_json(const nlohmann::json& doc) {
    require_object(doc, "config");
    // A result file embeds its resolved config under "config"; accept it
    // as-is so a run can be reproduced from its own output.
    const json& root =
        (doc.contains("config") && doc.at("config").is_object()) ? doc.at("config")
                                                                 : doc;
    reject_unknown_keys(root, "config", {"circuit", "drive", "run"});

    RunConfig config = default_config();
    if (root.contains("circuit")) apply_circuit_block(root.at("circuit"), config.circuit);
    if (root.contains("drive")) apply_drive_block(root.at("drive"), config.drive);
    if (root.contains("run")) apply_run_block(root.at("run"), config.run);
    return config;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw ConfigError(path + ": " + err.what());
    }
    try {
        return config_from_json(doc);
    } catch (const ConfigError& err) {
        throw ConfigError(path + ": " + err.what());
    }
}

double resolved_Omega(const RunConfig& config) {
    if (config.drive.Omega) return *config.drive.Omega;
    if (config.drive.resonant_with_mode) {
        try {
            return 2.0 * dispersion0(config.circuit,
                                     *config.drive.resonant_with_mode);
        } catch (const std::domain_error& err) {
            throw ConfigError(std::string("drive.resonant_with_mode: ") +
                              err.what());
        }
    }
    throw ConfigError("drive: set either Omega or resonant_with_mode");
}

double resolved_t_f(const RunConfig& config) {
    if (config.drive.t_f) return *config.drive.t_f;
    if (config.drive.tau) {
        if (config.drive.eta <= 0.0)
            throw ConfigError("drive.eta: must be positive to resolve tau");
        return *config.drive.tau / config.drive.eta;
    }
    throw ConfigError("drive: set either t_f or tau");
}

int resolved_mode(const RunConfig& config) {
    if (config.drive.mode) return *config.drive.mode;
    if (config.drive.resonant_with_mode) return *config.drive.resonant_with_mode;
    throw ConfigError(
        "drive.mode: no mode label; set drive.mode or drive.resonant_with_mode");
}

DriveSpec make_drive(const RunConfig& config) {
    DriveSpec drive;
    drive.eta = config.drive.eta;
    drive.Omega = resolved_Omega(config);
    drive.t_f = resolved_t_f(config);
    drive.ramp = config.drive.ramp;
    drive.ramp_window = config.drive.ramp_window;
    try {
        validate_drive(drive);
    } catch (const std::invalid_argument& err) {
        throw ConfigError(std::string("drive: ") + err.what());
    }
    return drive;
}

nlohmann::ordered_json resolved_config_json(const RunConfig& config) {
    nlohmann::ordered_json doc;

    nlohmann::ordered_json circuit;
    circuit["family"] = family_name(config.circuit.family);
    circuit["N"] = config.circuit.n_cells;
    circuit["delta_x"] = quantity_string(config.circuit.dx, Dimension::Length);
    circuit["C"] = quantity_string(config.circuit.C, Dimension::Capacitance);
    circuit["C_J"] = quantity_string(config.circuit.C_J, Dimension::Capacitance);
    circuit["L"] = quantity_string(config.circuit.L, Dimension::Inductance);
    circuit["I_c"] = quantity_string(config.circuit.I_c, Dimension::Current);
    doc["circuit"] = circuit;

    nlohmann::ordered_json drive;
    drive["eta"] = config.drive.eta;
    if (config.drive.Omega)
        drive["Omega"] =
            quantity_string(*config.drive.Omega, Dimension::AngularFrequency);
    else if (config.drive.resonant_with_mode)
        drive["resonant_with_mode"] = *config.drive.resonant_with_mode;
    // The *_resolved entries are informational echoes; degenerate configs
    // (e.g. the undriven eta = 0 limit, where tau cannot fix t_f) simply omit
    // them rather than failing the emission.
    try {
        drive["Omega_resolved"] =
            quantity_string(resolved_Omega(config), Dimension::AngularFrequency);
    } catch (const ConfigError&) {
    }
    if (config.drive.t_f)
        drive["t_f"] = quantity_string(*config.drive.t_f, Dimension::Time);
    else if (config.drive.tau)
        drive["tau"] = quantity_string(*config.drive.tau, Dimension::Time);
    try {
        drive["t_f_resolved"] =
            quantity_string(resolved_t_f(config), Dimension::Time);
    } catch (const ConfigError&) {
    }
    drive["ramp"] = config.drive.ramp == RampKind::Hard ? "hard" : "cosine";
    if (config.drive.ramp == RampKind::Cosine)
        drive["ramp_window"] =
            quantity_string(config.drive.ramp_window, Dimension::Time);
    if (config.drive.mode)
        drive["mode"] = *config.drive.mode;
    else if (config.drive.resonant_with_mode)
        drive["mode"] = *config.drive.resonant_with_mode;
    doc["drive"] = drive;

    nlohmann::ordered_json run;
    run["method"] = run_method_name(config.run.method);
    run["rtol"] = config.run.rtol;
    run["atol"] = config.run.atol;
    run["out"] = config.run.out;
    run["format"] = output_format_name(config.run.format);
    if (!config.run.families.empty()) {
        nlohmann::ordered_json families = nlohmann::ordered_json::array();
        for (CircuitFamily family : config.run.families)
            families.push_back(family_name(family));
        run["families"] = families;
    }
    doc["run"] = run;
    return doc;
}

}  // namespace tlinedce
