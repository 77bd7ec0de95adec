"""Particle creation in modulated superconducting transmission-line lattices.

Thin Python layer over the C++ core: circuit families, quantized mode
structure, driven Bogoliubov transforms (closed form and ODE oracle), and
spectrum sweeps.
"""

from ._core import (
    BogoliubovResult,
    CheckResult,
    CircuitFamily,
    CircuitSpec,
    DispersionRow,
    DispersionTable,
    DriveSpec,
    InfraredLimit,
    ModeRow,
    ModeSet,
    ModeTrajectory,
    ParticleNumber,
    RampKind,
    SweepResult,
    SweepRow,
    __version__,
    chi_factor,
    circuit_warnings,
    commutator_entry,
    dispersion0,
    dispersion_table,
    eigenenergy,
    evolve_analytic,
    evolve_numeric,
    family_from_name,
    family_name,
    infrared_limit,
    integrate_mode,
    josephson_E0,
    mode_energy,
    multiscale_growth_rate,
    normalization_check,
    particle_number_analytic,
    particle_number_numeric,
    run_verification,
    sweep_spectrum,
    tilde_E0,
    validate_circuit,
    wave_vector,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
