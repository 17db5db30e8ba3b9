"""Exact statevector simulation of phase estimation for diagonal unitaries.

The register holds t qubits, the system is a D-dimensional space on which the
unitary acts diagonally.  Gates are applied literally (no closed-form
shortcut) so the query and gate counters are meaningful; closed forms live in
the tests as oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, log2

import numpy as np

NORM_TOL = 1e-12


@dataclass
class DiagonalUnitary:
    """diag(e^{2 pi i phase_s}) over system basis states s.

    Phases are fractions of a full turn and must lie in [0, 1).
    """

    phases: tuple

    def __post_init__(self):
        self.phases = tuple(float(p) for p in self.phases)
        if not self.phases:
            raise ValueError("empty unitary")
        for p in self.phases:
            if not 0.0 <= p < 1.0:
                raise ValueError(f"phase {p} outside [0, 1)")

    @property
    def dim(self) -> int:
        return len(self.phases)


@dataclass
class GateCounters:
    hadamards: int = 0
    controlled_rk: int = 0
    cu_queries: int = 0

    @property
    def total_gates(self) -> int:
        # controlled-U applications are tracked separately as queries
        return self.hadamards + self.controlled_rk

    def merged(self, other: "GateCounters") -> "GateCounters":
        return GateCounters(
            hadamards=self.hadamards + other.hadamards,
            controlled_rk=self.controlled_rk + other.controlled_rk,
            cu_queries=self.cu_queries + other.cu_queries,
        )


class QpeState:
    """Register tensor system statevector with mutable gate application.

    amps[l, s] is the amplitude of register value l and system basis state s.
    Register bit j of l carries significance 2^j.
    """

    def __init__(self, t: int, system_amplitudes):
        if t <= 0:
            raise ValueError("need at least one register qubit")
        sys = np.asarray(system_amplitudes, dtype=complex)
        if sys.ndim != 1 or sys.size == 0:
            raise ValueError("system state must be a nonempty vector")
        norm = np.linalg.norm(sys)
        if abs(norm - 1.0) > 1e-9:
            raise ValueError(f"system state norm {norm} is not 1")
        self.t = t
        self.dim = sys.size
        self.amps = np.zeros((1 << t, sys.size), dtype=complex)
        self.amps[0] = sys
        self.counters = GateCounters()

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def register_distribution(self) -> np.ndarray:
        return np.abs(self.amps) ** 2 @ np.ones(self.dim)


def _hadamard(state: QpeState, wire: int) -> None:
    shape = (-1, 2, 1 << wire, state.dim)
    a = state.amps.reshape(shape)
    lo = a[:, 0].copy()
    hi = a[:, 1].copy()
    r = np.sqrt(0.5)
    a[:, 0] = r * (lo + hi)
    a[:, 1] = r * (lo - hi)
    state.counters.hadamards += 1


def _controlled_phase(state: QpeState, wire_a: int, wire_b: int, turn: float) -> None:
    idx = np.arange(1 << state.t)
    mask = ((idx >> wire_a) & (idx >> wire_b) & 1).astype(bool)
    state.amps[mask] *= np.exp(2j * np.pi * turn)
    state.counters.controlled_rk += 1


def _swap_wires(state: QpeState, wire_a: int, wire_b: int) -> None:
    # relabeling only, not counted as a gate
    idx = np.arange(1 << state.t)
    bit_a = (idx >> wire_a) & 1
    bit_b = (idx >> wire_b) & 1
    swapped = idx ^ ((bit_a ^ bit_b) << wire_a) ^ ((bit_a ^ bit_b) << wire_b)
    state.amps = state.amps[swapped]


def hadamard_layer(state: QpeState) -> QpeState:
    """Put the whole register into the uniform superposition."""
    for wire in range(state.t):
        _hadamard(state, wire)
    return state


def controlled_power_u(state: QpeState, unitary: DiagonalUnitary, j: int) -> QpeState:
    """Apply U^(2^j) controlled on register bit j; one oracle query."""
    if not 0 <= j < state.t:
        raise ValueError("control bit out of range")
    if unitary.dim != state.dim:
        raise ValueError("system dimension mismatch")
    idx = np.arange(1 << state.t)
    mask = ((idx >> j) & 1).astype(bool)
    phases = np.asarray(unitary.phases)
    state.amps[mask] *= np.exp(2j * np.pi * (1 << j) * phases)[None, :]
    state.counters.cu_queries += 1
    return state


def qft(state: QpeState) -> QpeState:
    """Forward transform; wire t-1 is the most significant bit."""
    for j in range(state.t - 1, -1, -1):
        _hadamard(state, j)
        for k in range(2, j + 2):
            _controlled_phase(state, j, j - k + 1, 1.0 / (1 << k))
    for j in range(state.t // 2):
        _swap_wires(state, j, state.t - 1 - j)
    return state


def inverse_qft(state: QpeState) -> QpeState:
    """Inverse of qft: undo the swaps, then the conjugated gates in reverse."""
    for j in range(state.t // 2):
        _swap_wires(state, j, state.t - 1 - j)
    for j in range(state.t):
        for k in range(j + 1, 1, -1):
            _controlled_phase(state, j, j - k + 1, -1.0 / (1 << k))
        _hadamard(state, j)
    return state


def qpe_run(unitary: DiagonalUnitary, system_state, t: int):
    """One full phase-estimation circuit.

    Returns (register distribution, counters, final state).  The state is
    left unmeasured so callers can collapse it themselves.
    """
    if t <= 0:
        raise ValueError("register needs t >= 1 qubits")
    state = QpeState(t, system_state)
    hadamard_layer(state)
    for j in range(t):
        controlled_power_u(state, unitary, j)
    inverse_qft(state)
    if abs(state.norm() - 1.0) > NORM_TOL:
        raise ArithmeticError("norm drifted beyond tolerance")
    return state.register_distribution(), state.counters, state


def measure_register(state: QpeState, rng: np.random.Generator):
    """Sample a register value and collapse the system accordingly."""
    dist = state.register_distribution()
    total = dist.sum()
    m = int(rng.choice(dist.size, p=dist / total))
    post = state.amps[m]
    post = post / np.linalg.norm(post)
    return m, post


def phase_encode(eigenvalue: int, chi_max: int, t: int) -> Fraction:
    """Signed integer eigenvalue to a register phase, two's-complement style."""
    if abs(eigenvalue) > chi_max:
        raise ValueError(f"|{eigenvalue}| exceeds the stated bound {chi_max}")
    if (1 << t) < 2 * chi_max + 2:
        raise ValueError(f"register of {t} bits too small for bound {chi_max}")
    return Fraction(eigenvalue % (1 << t), 1 << t)


def phase_decode(m: int, t: int) -> int:
    half = 1 << (t - 1)
    return m if m < half else m - (1 << t)


def phase_tail_bound(t: int, precision_bits: int) -> Fraction:
    """P(|m - b| > e) < 1/(2(e-1)) with e = 2^(t-p) - 1."""
    e = (1 << (t - precision_bits)) - 1
    if e < 2:
        raise ValueError("tail bound needs e >= 2")
    return Fraction(1, 2 * (e - 1))


def offgrid_amplitude(zeta: float, m: int, t: int) -> complex:
    """Closed-form register amplitude when the phase zeta is not a t-bit grid point."""
    size = 1 << t
    delta = zeta - m / size
    num = 1.0 - np.exp(2j * np.pi * size * delta)
    den = 1.0 - np.exp(2j * np.pi * delta)
    if abs(den) < 1e-300:
        return complex(1.0)
    return complex(num / den / size)


def shots_json(unitary: DiagonalUnitary, system_state, t: int, shots: int, seed: int = 0) -> str:
    """Measurement statistics of one circuit as a stable JSON string.

    The circuit runs once (counters are per-circuit, not per-shot) and the
    register distribution is then sampled `shots` times.
    """
    import json

    dist, counters, _ = qpe_run(unitary, system_state, t)
    rng = np.random.default_rng(seed)
    draws = rng.choice(dist.size, size=shots, p=dist / dist.sum())
    counts: dict[int, int] = {}
    for value in draws:
        counts[int(value)] = counts.get(int(value), 0) + 1
    return json.dumps(
        {
            "schema": "1",
            "t": t,
            "outcomes": [
                {"value": v, "count": counts[v]} for v in sorted(counts)
            ],
            "cu_queries": counters.cu_queries,
            "total_gates": counters.total_gates,
            "seed": seed,
        },
        sort_keys=True,
    )
