#pragma once

#include <string>
#include <vector>

#include "tlinedce/circuit.hpp"

// Parametric modulation of the Josephson energy:
//   E(t) = E0 * [1 + 4 eta w(t) sin(Omega t)],   0 <= t <= t_f,
// and E = E0 outside the drive window. w(t) is the envelope: identically 1
// for the hard (instantaneous) switch, or a raised-cosine ramp over a window
// at both ends for studying switching artifacts.

namespace tlinedce {

enum class RampKind { Hard, Cosine };

struct DriveSpec {
    double eta = 0.01;            // dimensionless modulation depth (<< 1)
    double Omega = 0.0;           // modulation angular frequency [rad/s]
    double t_f = 0.0;             // drive duration [s]
    RampKind ramp = RampKind::Hard;
    double ramp_window = 0.0;     // cosine ramp length at each end [s]
};

// Hard requirements: 0 < eta <= 0.1, Omega > 0, t_f > 0, and for the cosine
// ramp 0 < ramp_window <= t_f/2. Throws std::invalid_argument.
void validate_drive(const DriveSpec& drive);

// Soft advisories: eta above 0.05 strains the first-order perturbative
// treatment behind the closed-form amplitudes.
std::vector<std::string> drive_warnings(const DriveSpec& drive);

// Envelope w(t): 0 outside [0, t_f]; 1 inside for the hard ramp; for the
// cosine ramp, raised-cosine from 0 to 1 over ramp_window at each end.
double drive_envelope(const DriveSpec& drive, double t);

// Instantaneous Josephson energy E(t) [J].
double drive_energy(const CircuitSpec& spec, const DriveSpec& drive, double t);

// Instantaneous squared mode frequency omega_h^2(t) [rad^2/s^2]:
//   Massless families: omega0^2 * (1 + 4 eta w(t) sin(Omega t))
//   Massive families:  omega0^2 + (Et0/C) * 4 eta w(t) sin(Omega t)
// i.e. the family dispersion evaluated at E(t), written in the form the mode
// equation uses.
double instantaneous_frequency_sq(const CircuitSpec& spec,
                                  const DriveSpec& drive, int j, double t);

// sqrt of the above [rad/s].
double instantaneous_frequency(const CircuitSpec& spec, const DriveSpec& drive,
                               int j, double t);

// Dimensionless detuning from the parametric resonance with mode h:
//   (Omega - 2*omega0_h) / (2*omega0_h).
double resonance_offset(const DriveSpec& drive, double omega0_h);

// Resonance classifier used by the closed-form amplitudes: |offset| below
// tol_res counts as resonant. The multiscale treatment resolves only the
// exact resonance (the Dirac-delta factor in the slow-time amplitudes);
// detuning physics belongs to the numerical integrator. Default tolerance is
// eta/2, half the parametric-resonance bandwidth scale.
double default_resonance_tol(const DriveSpec& drive);
bool is_resonant(const DriveSpec& drive, double omega0_h, double tol_res);
bool is_resonant(const DriveSpec& drive, double omega0_h);  // default tol

}  // namespace tlinedce
