#pragma once

// Physical constants used throughout the library. Values are pinned (2019 SI
// exact values where the SI defines them) so that derived numbers are
// reproducible bit-for-bit across builds.

namespace tlinedce {

struct PhysicalConstants {
    double hbar = 1.054571817e-34;      // reduced Planck constant [J s]
    double phi0 = 2.067833848e-15;      // superconducting flux quantum pi*hbar/e [Wb]
    double e_charge = 1.602176634e-19;  // elementary charge [C] (SI exact)
};

// Relative deviation of phi0 from pi*hbar/e. The two constants are pinned
// independently, so this is a consistency check on the table itself; it must
// stay below 1e-9 for the defaults (and for any user-supplied override).
double flux_quantum_consistency(const PhysicalConstants& pc);

}  // namespace tlinedce
