"""Stroboscopic Rydberg-atom quantum simulator (dense state vector core)."""

from ._rydsim import (
    Pauli,
    PauliString,
    StateVector,
    RunConfig,
    CheckResult,
    commutes,
    control_pulse,
    coherent_step,
    kraus_pair_toric,
    build_toric,
    build_cubic,
    dimer_sector_sizes,
    gate_time,
    blockade_radius,
    c6_for_radius,
    sweep_time,
    energy_scales,
    effective_temperature,
    run_verification,
    run_experiment,
    sha256_hex,
)

__all__ = [
    "Pauli",
    "PauliString",
    "StateVector",
    "RunConfig",
    "CheckResult",
    "commutes",
    "control_pulse",
    "coherent_step",
    "kraus_pair_toric",
    "build_toric",
    "build_cubic",
    "dimer_sector_sizes",
    "gate_time",
    "blockade_radius",
    "c6_for_radius",
    "sweep_time",
    "energy_scales",
    "effective_temperature",
    "run_verification",
    "run_experiment",
    "sha256_hex",
]
