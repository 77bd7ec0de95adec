#include "tlinedce/circuit.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace tlinedce {

double flux_quantum_consistency(const PhysicalConstants& pc) {
    const double expected = std::numbers::pi * pc.hbar / pc.e_charge;
    return std::abs(pc.phi0 / expected - 1.0);
}

const char* family_name(CircuitFamily family) {
    switch (family) {
        case CircuitFamily::LHTL1: return "LHTL1";
        case CircuitFamily::LHTL2: return "LHTL2";
        case CircuitFamily::RHTL1: return "RHTL1";
        case CircuitFamily::RHTL2: return "RHTL2";
    }
    throw std::logic_error("family_name: unhandled CircuitFamily");
}

CircuitFamily family_from_name(const std::string& name) {
    if (name == "LHTL1") return CircuitFamily::LHTL1;
    if (name == "LHTL2") return CircuitFamily::LHTL2;
    if (name == "RHTL1") return CircuitFamily::RHTL1;
    if (name == "RHTL2") return CircuitFamily::RHTL2;
    throw std::invalid_argument(
        "unknown circuit family '" + name +
        "' (expected LHTL1, LHTL2, RHTL1 or RHTL2)");
}

double josephson_E0(const CircuitSpec& spec) {
    return spec.I_c * spec.constants.phi0;
}

DriveClass drive_class(CircuitFamily family) {
    switch (family) {
        case CircuitFamily::LHTL1:
        case CircuitFamily::RHTL2:
            // E(t) multiplies the whole squared dispersion.
            return DriveClass::Massless;
        case CircuitFamily::LHTL2:
        case CircuitFamily::RHTL1:
            // E(t) enters as an additive, k-independent (mass-like) term.
            return DriveClass::Massive;
    }
    throw std::logic_error("drive_class: unhandled CircuitFamily");
}

void validate_circuit(const CircuitSpec& spec) {
    if (spec.n_cells < 4 || spec.n_cells % 2 != 0) {
        std::ostringstream msg;
        msg << "CircuitSpec: N must be an even integer >= 4 (mode labels run "
               "|j| = 1..N/2 up to the band edge), got N = "
            << spec.n_cells;
        throw std::invalid_argument(msg.str());
    }
    auto require_positive = [](double value, const char* name) {
        if (!(value > 0.0) || !std::isfinite(value)) {
            std::ostringstream msg;
            msg << "CircuitSpec: " << name
                << " must be strictly positive and finite, got " << value;
            throw std::invalid_argument(msg.str());
        }
    };
    require_positive(spec.dx, "delta_x");
    require_positive(spec.C, "C");
    require_positive(spec.C_J, "C_J");
    require_positive(spec.L, "L");
    require_positive(spec.I_c, "I_c");
    require_positive(spec.constants.hbar, "hbar");
    require_positive(spec.constants.phi0, "phi0");
    require_positive(spec.constants.e_charge, "e");
    if (flux_quantum_consistency(spec.constants) > 1e-9) {
        throw std::invalid_argument(
            "CircuitSpec: constants table is inconsistent, phi0 differs from "
            "pi*hbar/e by more than 1e-9 relative");
    }
}

std::vector<std::string> circuit_warnings(const CircuitSpec& spec) {
    std::vector<std::string> warnings;

    // Linearizing the Josephson element assumes the phase regime: the
    // Josephson energy must dominate the charging energy of the junction
    // capacitance, E0 >> (2e)^2 / (2 C_J).
    const double charging = 4.0 * spec.constants.e_charge *
                            spec.constants.e_charge / (2.0 * spec.C_J);
    const double ratio = josephson_E0(spec) / charging;
    if (ratio < 100.0) {
        std::ostringstream msg;
        msg << "phase-regime ratio E0 / [(2e)^2/(2 C_J)] = " << ratio
            << " < 100; the linearized SQUID model is marginal here";
        warnings.push_back(msg.str());
    }

    // The LHTL1 infrared-limit shorthand sqrt(Et0/(4C)) needs 4C >> C_J.
    if (spec.family == CircuitFamily::LHTL1 &&
        4.0 * spec.C / spec.C_J < 10.0) {
        std::ostringstream msg;
        msg << "LHTL1: 4C/C_J = " << 4.0 * spec.C / spec.C_J
            << " < 10; the approximate infrared limit degrades";
        warnings.push_back(msg.str());
    }
    return warnings;
}

}  // namespace tlinedce
