import cmath
import json
import math

import numpy as np
import pytest

import rydsim


def test_pauli_algebra():
    x = rydsim.PauliString.single(0, rydsim.Pauli.X)
    z = rydsim.PauliString.single(0, rydsim.Pauli.Z)
    assert str(x * z) == str(rydsim.PauliString.parse("-i Y0"))
    assert not rydsim.commutes(x, z)
    assert rydsim.commutes(rydsim.PauliString.parse("+1 X0 X1"), rydsim.PauliString.parse("+1 Z0 Z1"))


def test_coherent_step_matches_exponential():
    rng = np.random.default_rng(3)
    psi = rng.normal(size=32) + 1j * rng.normal(size=32)
    psi[16:] = 0.0  # control qubit 4 in |0>
    psi /= np.linalg.norm(psi)
    state = rydsim.StateVector.from_amplitudes(psi)
    phi = 0.37
    rydsim.coherent_step(state, 4, [0, 1, 2, 3], rydsim.Pauli.X, phi)

    A = rydsim.PauliString.uniform([0, 1, 2, 3], rydsim.Pauli.X).matrix(4)
    expected = (math.cos(phi) * np.eye(16) + 1j * math.sin(phi) * A) @ psi[:16]
    got = state.amplitudes
    overlap = np.vdot(expected, got[:16])
    assert abs(abs(overlap) - 1.0) < 1e-12
    assert np.linalg.norm(got[16:]) < 1e-12


def test_kraus_pair_is_complete():
    for theta in (0.3, math.pi / 2):
        k0, k1 = rydsim.kraus_pair_toric(theta)
        total = k0.conj().T @ k0 + k1.conj().T @ k1
        assert np.abs(total - np.eye(16)).max() < 1e-12


def test_lattices():
    t = rydsim.build_toric(3)
    assert t["links"] == 18
    assert len(t["plaquettes"]) == 9
    c = rydsim.build_cubic(2, 2, 1)
    assert c["links"] == 12
    assert sum(rydsim.dimer_sector_sizes(2, 2, 1)) > 0


def test_rydberg_numbers():
    t_gate = rydsim.gate_time(2 * math.pi * 1.2e9, 2 * math.pi * 1e8)
    assert abs(t_gate - 320e-9) / 320e-9 < 0.01
    assert 1e-6 <= rydsim.sweep_time(4, 2, t_gate) <= 1e-5
    delta, omega_c = 2 * math.pi * 1.2e9, 2 * math.pi * 1e9
    c6 = rydsim.c6_for_radius(delta, omega_c, 1.4e-6)
    assert rydsim.blockade_radius(delta, omega_c, c6) == pytest.approx(1.4e-6, rel=1e-14)
    e = rydsim.energy_scales(1.0, 0.5, 2e-6)
    assert e["energy_rad_per_s"] == pytest.approx(5e5)


def test_config_round_trip():
    c = rydsim.RunConfig()
    c.set("toric.phi=0.25")
    c.seed = 99
    assert rydsim.RunConfig.parse(c.serialize()) == c
    with pytest.raises(ValueError):
        c.set("toric.no_such_key=1")


def test_verification_checks_pass():
    checks = rydsim.run_verification(include_engine=False)
    assert len(checks) > 5
    assert [c.name for c in checks if not c.passed] == []


def test_experiment_is_deterministic():
    c = rydsim.RunConfig()
    c.set("toric.trajectories=20")
    c.set("toric.sweeps=4")
    c.workers = 1
    a = rydsim.run_experiment(c)
    c.workers = 2
    b = rydsim.run_experiment(c)
    assert a["files"] == b["files"]
    assert a["summary"] == b["summary"]
    summary = json.loads(a["summary"])
    assert summary["experiment"] == "toric-cool"
    assert a["files"]["toric_aggregate.csv"].startswith("# schema=1")
