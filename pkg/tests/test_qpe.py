"""Statevector phase estimation: exactness, counters, tails."""

import json
from fractions import Fraction
from math import sqrt

import numpy as np
import pytest

from projdetect.qpe import (
    DiagonalUnitary,
    QpeState,
    hadamard_layer,
    inverse_qft,
    measure_register,
    offgrid_amplitude,
    phase_decode,
    phase_encode,
    phase_tail_bound,
    qft,
    qpe_run,
    shots_json,
)


def dense_dft_matrix(t: int) -> np.ndarray:
    size = 1 << t
    om = np.exp(2j * np.pi / size)
    return np.array(
        [[om ** (j * k) for k in range(size)] for j in range(size)]
    ) / sqrt(size)


def test_qft_matches_dense_dft():
    for t in range(1, 7):
        size = 1 << t
        dft = dense_dft_matrix(t)
        for col in range(size):
            state = QpeState(t, [1.0])
            state.amps[:, 0] = 0
            state.amps[col, 0] = 1.0
            qft(state)
            assert np.max(np.abs(state.amps[:, 0] - dft[:, col])) < 1e-13


def test_inverse_qft_inverts():
    rng = np.random.default_rng(3)
    for t in (1, 3, 5):
        vec = rng.normal(size=1 << t) + 1j * rng.normal(size=1 << t)
        vec /= np.linalg.norm(vec)
        state = QpeState(t, [1.0])
        state.amps[:, 0] = vec
        inverse_qft(qft(state))
        assert np.max(np.abs(state.amps[:, 0] - vec)) < 1e-12


def test_counter_closed_forms():
    """One run costs t queries and 2t + t(t-1)/2 counted gates."""
    for t in range(1, 9):
        unitary = DiagonalUnitary((Fraction(1, 4),))
        _, counters, _ = qpe_run(unitary, [1.0], t)
        assert counters.cu_queries == t
        assert counters.hadamards == 2 * t
        assert counters.controlled_rk == t * (t - 1) // 2
        assert counters.total_gates == 2 * t + t * (t - 1) // 2


def test_counters_merge():
    from projdetect.qpe import GateCounters

    a = GateCounters(hadamards=2, controlled_rk=1, cu_queries=3)
    b = GateCounters(hadamards=5, controlled_rk=7, cu_queries=11)
    merged = a.merged(b)
    assert (merged.hadamards, merged.controlled_rk, merged.cu_queries) == (7, 8, 14)


def test_on_grid_phase_is_read_exactly():
    t = 6
    for value in (0, 1, 17, 63):
        unitary = DiagonalUnitary((Fraction(value, 1 << t),))
        dist, _, _ = qpe_run(unitary, [1.0], t)
        assert dist[value] > 1.0 - 1e-12
        assert dist.sum() == pytest.approx(1.0, abs=1e-12)
        wrong = dist.sum() - dist[value]
        assert wrong < 1e-12


def test_eigenvalue_encode_decode_roundtrip():
    chi = 15
    t = 5
    for e in range(-chi, chi + 1):
        phase = phase_encode(e, chi, t)
        m = int(phase * (1 << t))
        assert phase_decode(m, t) == e
    with pytest.raises(ValueError, match="exceeds"):
        phase_encode(16, 15, 5)
    with pytest.raises(ValueError, match="too small"):
        phase_encode(3, 15, 4)


def test_superposition_splits_by_weight():
    t = 4
    unitary = DiagonalUnitary((Fraction(1, 16), Fraction(5, 16)))
    amp = np.array([0.6, 0.8])
    dist, _, state = qpe_run(unitary, amp, t)
    assert dist[1] == pytest.approx(0.36, abs=1e-12)
    assert dist[5] == pytest.approx(0.64, abs=1e-12)
    rng = np.random.default_rng(0)
    m, post = measure_register(state, rng)
    assert m in (1, 5)
    expected = np.array([1.0, 0.0]) if m == 1 else np.array([0.0, 1.0])
    assert np.allclose(np.abs(post), expected, atol=1e-12)


def test_offgrid_amplitude_matches_simulator():
    t = 5
    zeta = 1 / 3
    unitary = DiagonalUnitary((zeta,))
    dist, _, _ = qpe_run(unitary, [1.0], t)
    for m in range(1 << t):
        assert abs(offgrid_amplitude(zeta, m, t)) ** 2 == pytest.approx(
            dist[m], abs=1e-12
        )


def test_phase_tail_bound_values():
    assert phase_tail_bound(6, 2) == Fraction(1, 28)
    assert phase_tail_bound(8, 3) == Fraction(1, 60)
    with pytest.raises(ValueError):
        phase_tail_bound(3, 3)


def test_empirical_tail_under_bound_single_case():
    """Spot check of the tail bound; the acceptance suite sweeps the grid."""
    t, p = 6, 2
    zeta = sqrt(2) - 1
    size = 1 << t
    e = (1 << (t - p)) - 1
    dist, _, _ = qpe_run(DiagonalUnitary((zeta,)), [1.0], t)
    rng = np.random.default_rng(11)
    shots = rng.choice(size, size=10**5, p=dist / dist.sum())
    b = int(zeta * size)
    err = np.minimum((shots - b) % size, (b - shots) % size)
    fail = float(np.mean(err > e))
    assert fail < float(phase_tail_bound(t, p))


def test_shots_json_contract():
    unitary = DiagonalUnitary((Fraction(1, 4), Fraction(3, 4)))
    amp = [sqrt(0.5), sqrt(0.5)]
    blob = shots_json(unitary, amp, 2, 50, seed=1)
    again = shots_json(unitary, amp, 2, 50, seed=1)
    assert blob == again
    data = json.loads(blob)
    assert data["schema"] == "1"
    assert data["t"] == 2
    assert data["cu_queries"] == 2
    assert data["total_gates"] == 5
    assert sum(o["count"] for o in data["outcomes"]) == 50
    values = [o["value"] for o in data["outcomes"]]
    assert values == sorted(values)
    assert set(values) <= {1, 3}


def test_hadamard_layer_uniform():
    state = QpeState(3, [1.0])
    hadamard_layer(state)
    assert np.allclose(np.abs(state.amps[:, 0]), 1 / sqrt(8), atol=1e-14)


def test_norm_guard_rejects_bad_state():
    with pytest.raises(ValueError, match="norm"):
        QpeState(2, [0.5, 0.5])
