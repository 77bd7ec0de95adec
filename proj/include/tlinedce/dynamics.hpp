#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "tlinedce/circuit.hpp"
#include "tlinedce/drive.hpp"

// Driven single-mode dynamics. During the drive each Fourier mode h obeys
// the parametric-oscillator equation
//
//   Qdd_h(t) + omega_h^2(t) Q_h(t) = 0,
//
// with mode-continuity initial conditions Q(0) = 1/sqrt(2 omega0_h),
// Qd(0) = -i omega0_h Q(0), so the undriven solution continues the t <= 0
// mode phase e^{-i omega0 t}. After the drive (E back to E0) the solution is
// a superposition A e^{+i omega0 t} + B e^{-i omega0 t}; the Bogoliubov
// coefficients are alpha = sqrt(2 omega0) B, beta = sqrt(2 omega0) A, and
// |beta|^2 is the number of particles created from vacuum.
//
// Two independent routes produce (A, B):
//  - multiscale_AB: first-order multiple-scale closed forms in the slow time
//    tau = eta * t (growth rate omega0 for massless families, Et0/(C omega0)
//    for massive ones), valid exactly on resonance Omega = 2 omega0.
//  - integrate_mode + extract_AB_numeric: direct adaptive integration of the
//    exact mode equation, the oracle the closed forms are tested against.
//
// Q is stored in the natural mode units of the expansion (the flux scale
// sqrt(hbar/(C N)) lives outside it), so Q(0) = 1/sqrt(2 omega0_h) carries
// 1/sqrt(rad/s).

namespace tlinedce {

enum class EvolveMethod { AnalyticMultiscale, NumericOde };

const char* method_name(EvolveMethod method);

// Slow-time growth rate r of the resonant multiscale amplitudes
// (A' = r B, B' = r A in tau): omega0_h for massless families,
// Et0/(C*omega0_h) for massive ones. r*tau is the sinh/cosh argument.
double multiscale_growth_rate(const CircuitSpec& spec, double omega0_h);

struct BogoliubovResult {
    int mode = 0;
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};
    EvolveMethod method = EvolveMethod::AnalyticMultiscale;
    double tau = 0.0;       // slow time eta * t_f [s]
    bool resonant = false;  // drive classified resonant with this mode

    double particle_number() const { return std::norm(beta); }
    // |alpha|^2 - |beta|^2, exactly 1 for the closed forms and within
    // integrator tolerance for the numeric route.
    double unitarity() const { return std::norm(alpha) - std::norm(beta); }
};

struct ModeTrajectory {
    int mode = 0;
    double omega0 = 0.0;  // static frequency of the mode [rad/s]
    // Samples at accepted integrator steps (thinned to max_samples; first is
    // t = 0, last is exactly t_f).
    std::vector<double> t;
    std::vector<std::complex<double>> Q;
    std::vector<std::complex<double>> Qdot;
    // |W(t)/W(0) - 1| per sample for the Wronskian W = Q Qd* - Q* Qd, plus
    // the maximum over every accepted step (not just the kept samples).
    std::vector<double> wronskian_drift;
    double max_wronskian_drift = 0.0;
};

struct IntegrateOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    int max_samples = 2001;  // >= 2; approximate sample budget (thinning
                             // of accepted steps only, never accuracy)
    // Reproduce the literal textbook initial rate Qd(0) = -i sqrt(2 omega0)
    // instead of mode continuity. Breaks alpha(0) = 1; kept as an opt-in
    // switch for comparison, never used by default.
    bool literal_initial_rate = false;
};

// Closed-form slow-time amplitudes (A_hh, B_hh) at tau = eta * t_f for the
// resonantly driven mode h:
//   resonant:  A = sinh(r tau)/sqrt(2 omega0),  B = cosh(r tau)/sqrt(2 omega0)
//              with r = omega0_h (massless) or Et0/(C omega0_h) (massive);
//   off-resonant: amplitudes stay frozen at A = 0, B = 1/sqrt(2 omega0).
// tol_res <= 0 selects the default tolerance eta/2.
std::pair<std::complex<double>, std::complex<double>> multiscale_AB(
    const CircuitSpec& spec, const DriveSpec& drive, int h, double tau,
    double tol_res = 0.0);

// Wraps (A, B) into a BogoliubovResult: alpha = sqrt(2 omega0) B,
// beta = sqrt(2 omega0) A.
BogoliubovResult bogoliubov_from_AB(std::complex<double> A,
                                    std::complex<double> B, double omega0_h,
                                    int mode, EvolveMethod method, double tau,
                                    bool resonant);

// Convenience: multiscale_AB + bogoliubov_from_AB at tau = eta * t_f.
BogoliubovResult evolve_analytic(const CircuitSpec& spec,
                                 const DriveSpec& drive, int h,
                                 double tol_res = 0.0);

// Integrates the exact mode equation over [0, t_f]. Internally the state is
// scaled to u = sqrt(2 omega0) Q against s = omega0 t so the tolerances act
// on O(1) numbers; the stored trajectory is in Q units. Throws
// IntegrationError (carrying the last good time) on step-size underflow.
ModeTrajectory integrate_mode(const CircuitSpec& spec, const DriveSpec& drive,
                              int h, const IntegrateOptions& opt = {});

// Inverts the post-drive superposition at the trajectory endpoint:
//   A = e^{-i omega0 t_f} (Q(t_f) + Qd(t_f)/(i omega0)) / 2
//   B = e^{+i omega0 t_f} (Q(t_f) - Qd(t_f)/(i omega0)) / 2
// Requires the trajectory to reach t_f (the drive end; E constant after).
std::pair<std::complex<double>, std::complex<double>> extract_AB_numeric(
    const ModeTrajectory& traj, double omega0_h, double t_f);

// Convenience: integrate_mode + extract_AB_numeric + bogoliubov_from_AB.
BogoliubovResult evolve_numeric(const CircuitSpec& spec, const DriveSpec& drive,
                                int h, const IntegrateOptions& opt = {});

}  // namespace tlinedce
