#pragma once

#include <string>
#include <vector>

#include "tlinedce/constants.hpp"

// Circuit families and lattice description.
//
// The library models four one-dimensional, N-cell, periodic transmission-line
// lattices built from linear reactances plus flux-tunable SQUIDs (Josephson
// energy E(t), junction capacitance C_J):
//
//   LHTL1 - left-handed line, one SQUID shunting each node to ground.
//   LHTL2 - left-handed line, SQUIDs in the series branch.
//   RHTL1 - right-handed line, SQUIDs replacing the shunt capacitors.
//   RHTL2 - right-handed line, SQUIDs replacing the series inductors.
//
// The family fixes the dispersion relation, the chi weight of the ladder
// operators, and how the drive enters the mode equation (multiplicative
// "massless" modulation vs. an additive "massive" term).

namespace tlinedce {

enum class CircuitFamily { LHTL1, LHTL2, RHTL1, RHTL2 };

// How the modulated Josephson energy enters omega^2(t) for a single mode:
// Massless families see omega^2(t) = omega0^2 * (1 + 4 eta sin(Omega t));
// Massive families see omega^2(t) = omega0^2 + (Et0/C) * 4 eta sin(Omega t),
// a k-independent additive term acting like a time-dependent mass.
enum class DriveClass { Massless, Massive };

struct CircuitSpec {
    CircuitFamily family = CircuitFamily::LHTL1;
    int n_cells = 200;      // N: number of unit cells (even, >= 4)
    double dx = 1.0;        // unit-cell length [m]; observables depend on k*dx only
    double C = 0.4e-12;     // linear capacitance per cell [F]
    double C_J = 0.02e-12;  // SQUID junction capacitance [F]
    double L = 60e-12;      // linear inductance per cell [H]
    double I_c = 1.25e-6;   // SQUID critical current [A]
    PhysicalConstants constants{};
};

const char* family_name(CircuitFamily family);
CircuitFamily family_from_name(const std::string& name);  // throws std::invalid_argument

// Static Josephson energy scale E0 = I_c * phi0 [J].
double josephson_E0(const CircuitSpec& spec);

// Drive classification by family (see DriveClass above).
DriveClass drive_class(CircuitFamily family);

// Hard validity requirements. Throws std::invalid_argument on the first
// violation: N must be even and >= 4 (the mode ladder runs |j| = 1..N/2 and
// needs the band edge), every element value must be strictly positive, and
// the constants table must satisfy phi0 = pi*hbar/e to 1e-9.
void validate_circuit(const CircuitSpec& spec);

// Soft advisories that do not block construction. Returns one human-readable
// line per issue:
//  - phase-regime check: the linearized SQUID model needs E0 >> (2e)^2/(2 C_J);
//    warn when the ratio drops below 100.
//  - LHTL1 infrared-limit quality: the approximate IR formula assumes
//    4C >> C_J; warn when 4C/C_J < 10.
std::vector<std::string> circuit_warnings(const CircuitSpec& spec);

}  // namespace tlinedce
