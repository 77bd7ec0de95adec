#pragma once

#include <string>
#include <vector>

#include "tlinedce/circuit.hpp"
#include "tlinedce/dynamics.hpp"

// Per-mode particle numbers and energies, resonance sweeps over the whole
// Brillouin zone for all four families, and the flat tables behind them.

namespace tlinedce {

struct ParticleNumber {
    double n = 0.0;        // sinh^2 of the growth argument; +inf past double range
    double log10_n = 0.0;  // always finite for argument > 0; -inf at tau = 0
};

// Closed-form particle number of resonantly driven mode h at slow time tau:
//   N = sinh^2(x),  x = omega0_h*tau (massless) or Et0*tau/(C*omega0_h)
// (massive). Computed in the log domain once x > 300 so the log10 companion
// stays exact when sinh^2 overflows. tau < 0 is a domain error.
ParticleNumber particle_number_analytic(const CircuitSpec& spec, int h,
                                        double tau);

// |beta|^2 from the numerical oracle for the given drive (normally resonant
// with mode h). Integration failures propagate as IntegrationError.
double particle_number_numeric(const CircuitSpec& spec, const DriveSpec& drive,
                               int h, const IntegrateOptions& opt = {});

// Energy released into mode h for N_h created particles: eps_h * N_h [J].
// N_h must be non-negative.
double mode_energy(const CircuitSpec& spec, int h, double N_h);

struct SweepRow {
    int j = 0;
    double omega0 = 0.0;            // [rad/s]
    double epsilon_over_hbar = 0.0; // [rad/s]
    double Omega = 0.0;             // drive frequency 2*omega0_j [rad/s]
    double N = 0.0;
    double log10_N = 0.0;
    double E_over_hbar = 0.0;       // (eps/hbar)*N [rad/s]
    EvolveMethod method = EvolveMethod::AnalyticMultiscale;
};

enum class Monotonicity { Increasing, Decreasing, None };
const char* monotonicity_name(Monotonicity m);

struct SweepResult {
    CircuitFamily family = CircuitFamily::LHTL1;
    double tau = 0.0;
    double eta = 0.0;
    std::vector<SweepRow> rows;          // j = 1..N/2, ascending
    Monotonicity trend_N = Monotonicity::None;
    Monotonicity trend_E = Monotonicity::None;
};

struct SweepOptions {
    double tau = 1e-12;   // slow time [s]
    double eta = 0.01;    // drive depth (fixes t_f = tau/eta per mode)
    EvolveMethod method = EvolveMethod::AnalyticMultiscale;
    double rtol = 1e-10;  // numeric method only
    double atol = 1e-12;
    int max_modes = 0;    // 0 = all of j = 1..N/2 (cost guard for huge N)
    int threads = 0;      // 0 = respect TLINE_DCE_THREADS, else hardware
};

// Drives every positive-branch mode of one family at its own resonance
// Omega = 2*omega0_j and tabulates N_j(tau) and E_j(tau). The negative
// branch is identical by the j -> -j degeneracy. Rows are sorted by j and
// deterministic regardless of thread count.
SweepResult sweep_spectrum(const CircuitSpec& spec, const SweepOptions& opt);
std::vector<SweepResult> sweep_spectrum(const std::vector<CircuitSpec>& specs,
                                        const SweepOptions& opt);

struct DispersionRow {
    int j = 0;
    double k_dx = 0.0;              // k_j * dx = 2*pi*j/N (dimensionless)
    double omega0 = 0.0;            // [rad/s]
    double epsilon_over_hbar = 0.0; // [rad/s]
};

struct DispersionTable {
    CircuitFamily family = CircuitFamily::LHTL1;
    std::vector<DispersionRow> rows;  // j = 1..N/2, ascending
};

// Static spectrum of the positive branch at E0 (frequencies plus
// eigenenergies - the content of the band-structure figure).
DispersionTable dispersion_table(const CircuitSpec& spec);
std::vector<DispersionTable> dispersion_table(
    const std::vector<CircuitSpec>& specs);

// Strict trend of a sequence (Increasing/Decreasing only when strict over
// every consecutive pair).
Monotonicity sequence_trend(const std::vector<double>& values);

}  // namespace tlinedce
