#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "tlinedce/circuit.hpp"
#include "tlinedce/lattice.hpp"

// Quantized mode structure of the undriven lattice (t <= 0, E = E0 constant):
// plane-wave mode functions, their lattice inner-product normalization,
// amplitude extraction from flux/momentum samples, chi-weighted ladder
// commutators and the Hamiltonian spectrum.
//
// Conventions: nodes are n = 1..N on a ring (n + N == n); mode labels are
// signed j with 1 <= |j| <= N/2. Note that the labels +N/2 and -N/2 describe
// the same lattice function (their k differ by a reciprocal-lattice vector),
// so lattice sums resolve label pairs only modulo N: the "Kronecker delta"
// produced by Fourier sums is the mod-N delta, which is 1 for the pair
// (+N/2, -N/2). Checks below document this aliasing instead of hiding it.

namespace tlinedce {

struct ModeRow {
    int j;            // signed mode label
    double k;         // wave vector [rad/m]
    double omega0;    // frequency at E0 [rad/s]
    double chi;       // commutator weight (dimensionless)
    double epsilon;   // single-quantum eigenenergy at E0 [J]
    double amp_norm;  // mode-function modulus sqrt(hbar/(2 C N omega0)) [Wb]
    double zeta;      // extraction prefactor sqrt(omega0 C/(2 hbar N)) [1/Wb]
};

// Immutable per-mode table for one circuit. Rows are ordered by ascending j
// (-N/2..-1 then 1..N/2); this ordering also defines the layout of amplitude
// and occupation vectors.
//
// For RHTL2 the quantized layer (ladder operators with chi = 1, momentum
// P = C*Phid, classical energy identity) describes the reduced network with
// the series junction capacitance dropped (4*C_J << C); building the set
// with Rhtl2Form::Approximate makes the mode frequencies self-consistent
// with that network. The default keeps the exact dispersion, which is what
// observables and tables use; every check except the nodewise energy
// identity is frequency-independent and passes either way.
class ModeSet {
  public:
    explicit ModeSet(const CircuitSpec& spec,
                     Rhtl2Form rhtl2_form = Rhtl2Form::Exact);  // validates

    const CircuitSpec& spec() const { return spec_; }
    int n_cells() const { return spec_.n_cells; }
    int max_label() const { return spec_.n_cells / 2; }
    std::size_t size() const { return rows_.size(); }  // == N

    // Position of label j in rows(); throws std::domain_error for bad j.
    std::size_t index_of(int j) const;
    const ModeRow& row(int j) const { return rows_[index_of(j)]; }
    const std::vector<ModeRow>& rows() const { return rows_; }

  private:
    CircuitSpec spec_;
    std::vector<ModeRow> rows_;
};

// Complex classical field sample on the ring: flux Phi_n [Wb] and conjugate
// momentum P_n [Wb*F/s, i.e. charge-like] per node, n = 1..N stored at
// indices 0..N-1. Complexified solutions are allowed; physically real states
// are the subset with Phi = conj(Phi).
struct FieldState {
    std::vector<std::complex<double>> phi;
    std::vector<std::complex<double>> momentum;
};

// Plane-wave mode function
//   phi_j(n, t) = sqrt(hbar/(2 C N omega0_j)) * exp(i(k_j n dx - omega0_j t)).
// Defined on the static epoch only: t > 0 is rejected with an error pointing
// at the dynamics layer, which owns driven evolution.
std::complex<double> mode_function(const ModeSet& modes, int j, int n, double t);

// Lattice Klein-Gordon inner product
//   -(i C/hbar) * sum_n [ phi_i d_t phi_j^* - (d_t phi_i) phi_j^* ]
// evaluated by explicit summation at time t (any t <= 0; the value is
// t-independent). Equals the mod-N delta of the labels: 1 for i == j and for
// the aliased band-edge pair, 0 otherwise.
std::complex<double> normalization_check(const ModeSet& modes, int i, int j,
                                         double t = 0.0);

// Builds the field state carrying the given mode amplitudes at time t <= 0:
//   Phi_n = sum_j [ phi_j(n,t) a_j + phi_j(n,t)^* conj(a_j) ],
// with the conjugate momentum assembled from d_t Phi through the family's
// capacitance stencil (LHTL1: P_n = C(2 Phid_n - Phid_{n-1} - Phid_{n+1})
// + C_J Phid_n; LHTL2: the same difference stencil without the C_J term;
// RHTL1/RHTL2: P_n = C Phid_n). Amplitudes follow rows() order.
FieldState embed_amplitudes(const ModeSet& modes,
                            const std::vector<std::complex<double>>& amps,
                            double t);

// Classical amplitude read back from a field sample at time t <= 0:
//   a_h = zeta_h sum_n exp(-i(k_h n dx - omega_h t))
//                  * [ Phi_n + i P_n / (chi_h omega_h C) ].
// Inverse of embed_amplitudes away from the band edge; at the band edge it
// returns the sum of the two aliased amplitudes. Throws std::invalid_argument
// when the state length differs from N.
std::complex<double> extract_amplitude(const ModeSet& modes,
                                       const FieldState& state, int h,
                                       double t);

// extract_amplitude over all labels, in rows() order.
std::vector<std::complex<double>> extract_all(const ModeSet& modes,
                                              const FieldState& state,
                                              double t);

// Ladder commutator [a_j, a_h^dag] evaluated as the explicit double sum over
// node pairs, feeding in only the canonical commutators [Phi_n, P_m] =
// i hbar delta_nm -- a genuine numerical check of the chi weighting, not a
// restatement of it. Equals chi_j^{-1} * (mod-N delta of j, h).
// The optional chi_perturbation multiplies the chi used in a_j's momentum
// term by (1 + chi_perturbation); it exists as a negative-control hook for
// the verification suite and must be 0 in ordinary use.
std::complex<double> commutator_entry(const ModeSet& modes, int j, int h,
                                      double chi_perturbation = 0.0);

// Full N x N commutator matrix in rows() order. O(N^4) node operations: fine
// at N <= 64; prefer sampled commutator_entry calls at larger N.
std::vector<std::vector<std::complex<double>>> commutator_matrix(
    const ModeSet& modes, double chi_perturbation = 0.0);

// Energy of a Fock occupation {n_j}: sum_j hbar omega0_j (chi_j n_j + 1/2).
// One added quantum in mode j raises the energy by exactly epsilon_j.
// Occupation follows rows() order; negative entries are a domain error.
double hamiltonian_spectrum(const ModeSet& modes,
                            const std::vector<long long>& occupation);

// Field velocity d_t Phi_n for the same embedding as embed_amplitudes (the
// piece the energy form needs; P is its stencil image and cannot be undone
// node-locally for the left-handed families).
std::vector<std::complex<double>> embed_flux_rate(
    const ModeSet& modes, const std::vector<std::complex<double>>& amps,
    double t);

// Classical field energy evaluated nodewise from the quadratic Lagrangian
// forms, kinetic plus potential, using Hermitian |.|^2 forms so complexified
// states are admissible:
//   LHTL1: sum_n [ C/2 |Phid_n - Phid_{n+1}|^2 + C_J/2 |Phid_n|^2
//                  + Et0/2 |Phi_n|^2 ]
//   LHTL2: sum_n [ C/2 |Phid_n - Phid_{n+1}|^2 + |Phi_n|^2/(2L)
//                  + Et0/2 |Phi_n - Phi_{n+1}|^2 ]
//   RHTL1: sum_n [ C/2 |Phid_n|^2 + |Phi_n - Phi_{n+1}|^2/(2L)
//                  + Et0/2 |Phi_n|^2 ]
//   RHTL2: sum_n [ C/2 |Phid_n|^2 + Et0/2 |Phi_n - Phi_{n+1}|^2 ]
// For a state embedded from amplitudes a this equals
// sum_j hbar omega0_j chi_j |a_j|^2 (no zero-point term in the classical
// energy); the Parseval-type test asserts exactly that.
double field_energy_nodewise(const ModeSet& modes,
                             const std::vector<std::complex<double>>& phi,
                             const std::vector<std::complex<double>>& phi_dot);

}  // namespace tlinedce
