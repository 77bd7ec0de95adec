#pragma once

#include "tlinedce/circuit.hpp"

// Closed-form static spectral quantities of the four lattices: Brillouin-zone
// wave vectors, dispersion relations at a given Josephson energy, group
// velocities, chi weights and Hamiltonian eigenenergies.
//
// Mode labels are signed integers j with 1 <= |j| <= N/2; j = 0 is excluded
// (k = 0 is singular for the series-element circuits and carries no dynamics
// in the others). All formulas depend on j only through k_j*dx = 2*pi*j/N.

namespace tlinedce {

// RHTL2 admits both the exact dispersion of the series-SQUID network and the
// textbook simplification valid for 4*C_J << C. The exact form is the default
// everywhere; the approximate form exists for comparison only.
enum class Rhtl2Form { Exact, Approximate };

// k_j = 2*pi*j / (N*dx), antisymmetric in j. Throws std::domain_error when
// |j| is outside 1..N/2 (the message names the valid range).
double wave_vector(const CircuitSpec& spec, int j);

// Josephson energy rescaled to inverse inductance: Et = (2*pi/phi0)^2 * E.
// With E = E0 = I_c*phi0 this reduces to 4*pi^2*I_c/phi0. Requires E > 0.
double tilde_E(const CircuitSpec& spec, double E);

// Convenience: tilde_E at the static working point E0.
double tilde_E0(const CircuitSpec& spec);

// Mode angular frequency at Josephson energy E [rad/s]:
//   LHTL1: sqrt( Et / (4 C sin^2(k dx/2) + C_J) )
//   LHTL2: sqrt( 1/(4 C L sin^2(k dx/2)) + Et/C )
//   RHTL1: sqrt( 4 sin^2(k dx/2)/(L C) + Et/C )
//   RHTL2: 2 sin(|k| dx/2) * sqrt( Et / (C + 4 C_J sin^2(k dx/2)) )   [exact]
//          2 sin(|k| dx/2) * sqrt( Et / C )                    [approximate]
// Even in j. Throws like wave_vector for bad j and std::domain_error for
// E <= 0.
double dispersion(const CircuitSpec& spec, int j, double E,
                  Rhtl2Form rhtl2_form = Rhtl2Form::Exact);

// Dispersion at the static working point E0.
double dispersion0(const CircuitSpec& spec, int j,
                   Rhtl2Form rhtl2_form = Rhtl2Form::Exact);

// Analytic d(omega)/dk at k_j [m/s], evaluated on the j > 0 branch formulas
// (the j < 0 branch follows by antisymmetry of k). Strictly negative for the
// left-handed families and strictly positive for the right-handed ones --
// this sign is the defining "handedness" of the lattice.
double group_velocity(const CircuitSpec& spec, int j, double E);

// Infrared (band-edge) frequency of LHTL1, where the left-handed branch
// terminates: exact = sqrt(Et0/(4C + C_J)) and the 4C >> C_J simplification
// approx = sqrt(Et0/(4C)). Other families have no such saturation scale and
// are rejected with std::invalid_argument.
struct InfraredLimit {
    double exact;   // [rad/s]
    double approx;  // [rad/s]
};
InfraredLimit infrared_limit(const CircuitSpec& spec);

// Mode weight chi_j entering [a_j, a_h^dag] = chi_j^{-1} delta_jh and
// eps_j = hbar*omega_j*chi_j for the left-handed families:
//   LHTL1: 4 sin^2(k dx/2) + C_J/C,  LHTL2: 4 sin^2(k dx/2),  RHTL: 1.
double chi_factor(const CircuitSpec& spec, int j);

// Hamiltonian eigenenergy of one quantum in mode j at Josephson energy E [J]:
//   LHTL1: hbar * sqrt(chi_j * Et / C)
//   LHTL2: hbar * sqrt(chi_j * Et / C) * sqrt(chi_j + 1/(L*Et))
//   RHTL1/RHTL2: hbar * omega_j  (standard ladder operators, chi = 1)
// For both LHTL families this equals hbar*omega_j*chi_j identically.
double eigenenergy(const CircuitSpec& spec, int j, double E);

}  // namespace tlinedce
