#pragma once

#include <string>
#include <vector>

#include "tlinedce/observables.hpp"
#include "tlinedce/quantization.hpp"

// Deterministic text emission. Every float is rendered in scientific
// notation with 12 significant digits so reruns and cross-machine diffs are
// byte-stable; infinities are rendered as "inf"/"-inf".

namespace tlinedce {

std::string format_sci(double value);  // e.g. 1.21372290426e+11

// CSV renderers. Headers are part of the contract:
//   sweep:      family,j,omega0,epsilon_over_hbar,Omega,N,log10N,E_over_hbar,method
//   dispersion: family,j,k_dx,omega0,epsilon_over_hbar
//   modes:      j,k,omega0,chi,epsilon_over_hbar,amp_norm
//   trajectory: t,re_Q,im_Q,re_Qdot,im_Qdot,wronskian_drift
std::string sweep_csv(const SweepResult& sweep);
std::string dispersion_csv(const std::vector<DispersionTable>& tables);
std::string mode_table_csv(const ModeSet& modes);
std::string trajectory_csv(const ModeTrajectory& traj);

// Writes text to path, failing loudly (std::runtime_error) on I/O problems.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace tlinedce
