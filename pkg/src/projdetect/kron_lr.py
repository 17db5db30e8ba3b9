"""Tensor-square and restriction algebras over S_n, with their detectors.

Two commutative algebras extend the centre story. In C[S_n x S_n], the
products ptilde = Delta(P_R3)(P_R1 x P_R2) are orthogonal idempotents indexed
by triples with nonzero Kronecker coefficient, and they resolve the identity
1 x 1. In C[S_{m+n}], the products P_R emb(P_R1 x P_R2) do the same for
triples with nonzero restriction (Littlewood-Richardson) coefficient. Both
coefficients are computed exactly from characters, the LR one cross-checkable
against the tableau rule, and both algebras admit the same phase-estimation
detection as the centre, with one signature family per tensor slot.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cache
from itertools import combinations_with_replacement
from math import factorial
import json

import numpy as np

from .centre import cycle_class_size, k_star, normalized_character, signature_table
from .detection import t_bits
from .qpe import (
    DiagonalUnitary,
    GateCounters,
    measure_register,
    phase_decode,
    phase_encode,
    qpe_run,
)
from .symgroup import (
    Partition,
    as_partition,
    centralizer_order,
    character,
    class_size,
    dimension,
    partitions,
)

BRUTE_BUILD_BOUND = 5


def kronecker(r1: Partition, r2: Partition, r3: Partition) -> int:
    """Kronecker coefficient: (1/n!) sum_mu |C_mu| chi1 chi2 chi3 (mu).

    Fully symmetric in its three arguments; always a nonnegative integer, and
    a non-integral sum raises because it can only mean broken characters.
    """
    r1, r2, r3 = as_partition(r1), as_partition(r2), as_partition(r3)
    n = sum(r1)
    if sum(r2) != n or sum(r3) != n:
        raise ValueError("all three diagrams must have the same size")
    acc = 0
    for mu in partitions(n):
        acc += class_size(mu) * character(r1, mu) * character(r2, mu) * character(r3, mu)
    q, r = divmod(acc, factorial(n))
    if r:
        raise ArithmeticError(f"non-integral Kronecker sum for {r1},{r2},{r3}")
    if q < 0:
        raise ArithmeticError(f"negative Kronecker value for {r1},{r2},{r3}")
    return q


@cache
def kron_labels(n: int) -> tuple[tuple[Partition, Partition, Partition], ...]:
    """All triples (R1, R2, R3) with nonzero Kronecker coefficient, canonical order."""
    reps = partitions(n)
    return tuple(
        (a, b, c)
        for a in reps
        for b in reps
        for c in reps
        if kronecker(a, b, c)
    )


def ribbon_count(n: int) -> int:
    """Burnside count of diagonal-conjugation orbits on pairs: sum over mu of z_mu."""
    return sum(centralizer_order(mu) for mu in partitions(n))


def dim_K(n: int) -> int:
    """Dimension of the tensor-square algebra: sum of squared Kronecker coefficients.

    The coefficient is symmetric in its three labels, so the sum runs over
    unordered triples weighted by how many distinct orderings each one has.
    """
    reps = partitions(n)
    total = 0
    for a, b, c in combinations_with_replacement(reps, 3):
        orderings = len({(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)})
        total += orderings * kronecker(a, b, c) ** 2
    return total


def pair_projector_norm_sq(r1: Partition, r2: Partition, r3: Partition) -> Fraction:
    """Squared g-norm of ptilde: d1 d2 d3 C / (n!)^2, also its delta value."""
    n = sum(as_partition(r1))
    num = dimension(r1) * dimension(r2) * dimension(r3) * kronecker(r1, r2, r3)
    return Fraction(num, factorial(n) ** 2)


def kron_projector_brute(r1: Partition, r2: Partition, r3: Partition):
    """ptilde built literally in C[S_n x S_n]; referee for the closed forms."""
    from .groupalgebra import diagonal_map, projector_element, tensor

    r1, r2, r3 = as_partition(r1), as_partition(r2), as_partition(r3)
    n = sum(r1)
    if n > BRUTE_BUILD_BOUND:
        raise ValueError(f"literal pair-algebra build capped at n <= {BRUTE_BUILD_BOUND}")
    return diagonal_map(projector_element(r3)) * tensor(
        projector_element(r1), projector_element(r2)
    )


class TripleState:
    """Element of the tensor-square algebra over the ptilde basis."""

    def __init__(self, n: int, coeffs: dict):
        self.n = n
        valid = set(kron_labels(n))
        clean = {}
        for label, val in coeffs.items():
            label = tuple(as_partition(p) for p in label)
            if label not in valid:
                raise ValueError(
                    f"{label} has zero Kronecker coefficient; no projector to carry it"
                )
            if val != 0:
                clean[label] = val
        self.coeffs = clean

    def g_inner(self, other: "TripleState"):
        if self.n != other.n:
            raise ValueError("mismatched n")
        acc = 0
        for label, a in self.coeffs.items():
            b = other.coeffs.get(label)
            if b is None:
                continue
            a_c = a.conjugate() if isinstance(a, complex) else a
            acc += a_c * b * pair_projector_norm_sq(*label)
        return acc

    def unit_amplitudes(self, order=None) -> np.ndarray:
        if order is None:
            order = kron_labels(self.n)
        amps = np.array(
            [
                complex(self.coeffs.get(label, 0))
                * float(pair_projector_norm_sq(*label)) ** 0.5
                for label in order
            ],
            dtype=complex,
        )
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("zero state has no amplitude vector")
        return amps / norm


def pair_projector_state(r1, r2, r3) -> TripleState:
    label = tuple(as_partition(p) for p in (r1, r2, r3))
    return TripleState(sum(label[0]), {label: Fraction(1)})


def identity_pair_state(n: int) -> TripleState:
    """1 x 1 expanded over the ptilde basis: every coefficient is one.

    Detection on this state therefore samples the triple (R1, R2, R3) with
    probability d1 d2 d3 C / (n!)^2, and those weights sum to exactly 1.
    """
    return TripleState(n, {label: Fraction(1) for label in kron_labels(n)})


def _family_rounds(amps, labels, slot, group_size, rng, counters):
    """Run rounds k = 2..k_star(group_size) of one signature family.

    The system components are the surviving labels; slot picks which entry of
    each label supplies the T_k eigenvalue. Returns (round records, measured
    signature, collapsed system amplitudes). The caller skips groups with
    fewer than two diagrams since they carry no information.
    """
    cutoff = k_star(group_size)
    rounds = []
    sig = []
    for k in range(2, cutoff + 1):
        t = t_bits(group_size, k)
        bound = cycle_class_size(group_size, k)
        unitary = DiagonalUnitary(
            tuple(
                phase_encode(normalized_character(label[slot], k), bound, t)
                for label in labels
            )
        )
        dist, run, state = qpe_run(unitary, amps, t)
        m, amps = measure_register(state, rng)
        value = phase_decode(m, t)
        sig.append(value)
        rounds.append(
            {
                "k": k,
                "t": t,
                "measured": m,
                "eigenvalue": value,
                "queries": run.cu_queries,
                "gates": run.total_gates,
            }
        )
        counters.hadamards += run.hadamards
        counters.controlled_rk += run.controlled_rk
        counters.cu_queries += run.cu_queries
    return rounds, tuple(sig), amps


@dataclass
class MultiFamilyTranscript:
    sizes: tuple[int, ...]
    seed: int
    families: list[dict] = field(default_factory=list)
    detected: tuple | None = None
    counters: GateCounters = field(default_factory=GateCounters)

    def to_dict(self) -> dict:
        return {
            "schema": "1",
            "sizes": list(self.sizes),
            "seed": self.seed,
            "families": self.families,
            "detected": [",".join(map(str, p)) for p in self.detected],
            "cu_queries": self.counters.cu_queries,
            "total_gates": self.counters.total_gates,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def kron_detect(state: TripleState, seed: int = 0) -> MultiFamilyTranscript:
    """Identify a ptilde component with three signature families.

    Family "left" estimates T_k x 1 (eigenvalue from R1), "right" estimates
    1 x T_k (from R2), "diag" estimates Delta(T_k) (from R3); each family runs
    k = 2..k_star(n) and the three signatures are resolved independently.
    Labels with exactly zero coefficient are dropped up front so a projector
    state runs on a one-dimensional system.
    """
    n = state.n
    labels = [label for label in kron_labels(n) if state.coeffs.get(label)]
    rng = np.random.default_rng(seed)
    counters = GateCounters()
    transcript = MultiFamilyTranscript(sizes=(n, n, n), seed=seed)
    amps = state.unit_amplitudes(labels)
    detected = []
    table = signature_table(n, k_star(n))
    for slot, name in enumerate(("left", "right", "diag")):
        rounds, sig, amps = _family_rounds(amps, labels, slot, n, rng, counters)
        transcript.families.append(
            {"family": name, "rounds": rounds, "signature": list(sig)}
        )
        if sig not in table:
            raise ValueError(f"not a Kronecker projector: {name} signature {sig}")
        detected.append(table[sig])
    transcript.detected = tuple(detected)
    transcript.counters = counters
    if transcript.detected not in set(kron_labels(n)):
        raise ValueError(f"detected triple {transcript.detected} is not a valid label")
    return transcript


def identity_expansion_sample(n: int, seed: int = 0):
    """Expand 1 x 1 over the ptilde basis and sample one triple from it.

    The expansion coefficients are all one, so phase estimation collapses the
    superposition onto a triple with the Plancherel-style weight
    d1 d2 d3 C / (n!)^2; every returned triple has a nonzero coefficient.
    """
    return kron_detect(identity_pair_state(n), seed=seed).detected


def lr_coefficient(rep: Partition, r1: Partition, r2: Partition) -> int:
    """Restriction multiplicity of R1 x R2 in R over S_m x S_n, by characters.

    (1/(m! n!)) sum over class pairs of |C_mu1| |C_mu2| chi^R(mu1 merge mu2)
    chi^R1(mu1) chi^R2(mu2); equals the Littlewood-Richardson coefficient.
    """
    rep, r1, r2 = as_partition(rep), as_partition(r1), as_partition(r2)
    m, n = sum(r1), sum(r2)
    if sum(rep) != m + n:
        raise ValueError(f"|{rep}| != {m} + {n}")
    acc = 0
    for mu1 in partitions(m):
        for mu2 in partitions(n):
            merged = tuple(sorted(mu1 + mu2, reverse=True))
            acc += (
                class_size(mu1)
                * class_size(mu2)
                * character(rep, merged)
                * character(r1, mu1)
                * character(r2, mu2)
            )
    q, r = divmod(acc, factorial(m) * factorial(n))
    if r:
        raise ArithmeticError(f"non-integral restriction sum for {rep},{r1},{r2}")
    if q < 0:
        raise ArithmeticError(f"negative restriction value for {rep},{r1},{r2}")
    return q


def lr_coefficient_by_rule(rep: Partition, r1: Partition, r2: Partition) -> int:
    """The same coefficient by the tableau rule, as an independent route.

    Counts fillings of the skew diagram rep/r1 with content r2 that are
    weakly increasing along rows, strictly increasing down columns, and whose
    reverse reading word is a ballot sequence.
    """
    rep, r1, r2 = as_partition(rep), as_partition(r1), as_partition(r2)
    if sum(rep) != sum(r1) + sum(r2):
        raise ValueError("sizes must satisfy |rep| = |r1| + |r2|")
    if len(r1) > len(rep) or any(r1[i] > rep[i] for i in range(len(r1))):
        return 0
    inner = list(r1) + [0] * (len(rep) - len(r1))
    cells = [
        (r, c)
        for r in range(len(rep))
        for c in range(rep[r] - 1, inner[r] - 1, -1)
    ]
    maxv = len(r2)
    counts = [0] * (maxv + 2)
    values: dict[tuple[int, int], int] = {}

    def fill(i: int) -> int:
        if i == len(cells):
            return 1
        r, c = cells[i]
        lo = 1
        if r > 0 and c >= inner[r - 1]:
            lo = values[(r - 1, c)] + 1
        hi = values.get((r, c + 1), maxv)
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= r2[v - 1]:
                continue
            if v > 1 and counts[v] >= counts[v - 1]:
                continue
            counts[v] += 1
            values[(r, c)] = v
            total += fill(i + 1)
            counts[v] -= 1
            del values[(r, c)]
        return total

    return fill(0)


@cache
def lr_labels(m: int, n: int) -> tuple[tuple[Partition, Partition, Partition], ...]:
    """Triples (R, R1, R2) with nonzero restriction coefficient, canonical order."""
    return tuple(
        (rep, r1, r2)
        for rep in partitions(m + n)
        for r1 in partitions(m)
        for r2 in partitions(n)
        if lr_coefficient(rep, r1, r2)
    )


def dim_A(m: int, n: int) -> int:
    """Dimension of the restriction algebra: sum of squared coefficients."""
    return sum(lr_coefficient(*label) ** 2 for label in lr_labels(m, n))


def necklace_count(m: int, n: int) -> int:
    """Combinatorial route to dim A(m, n): two-color the parts of each mu.

    sum over (mu1, mu2) of z_{mu1 merge mu2} / (z_{mu1} z_{mu2}); each term is
    the product of binomials counting which parts of the merged type came
    from the m side, so the total counts part-colored diagrams of m + n.
    """
    acc = Fraction(0)
    for mu1 in partitions(m):
        for mu2 in partitions(n):
            merged = tuple(sorted(mu1 + mu2, reverse=True))
            acc += Fraction(
                centralizer_order(merged),
                centralizer_order(mu1) * centralizer_order(mu2),
            )
    if acc.denominator != 1:
        raise ArithmeticError("part-coloring count came out non-integral")
    return int(acc)


def lr_projector_norm_sq(rep, r1, r2) -> Fraction:
    """Squared g-norm of P_R emb(P_R1 x P_R2): d_R d1 d2 g / (m+n)!."""
    rep = as_partition(rep)
    num = (
        dimension(rep)
        * dimension(r1)
        * dimension(r2)
        * lr_coefficient(rep, r1, r2)
    )
    return Fraction(num, factorial(sum(rep)))


def lr_projector_brute(rep, r1, r2):
    """The restriction projector built literally in C[S_{m+n}]."""
    from .groupalgebra import embed_product, projector_element, tensor

    rep, r1, r2 = as_partition(rep), as_partition(r1), as_partition(r2)
    if sum(rep) > BRUTE_BUILD_BOUND:
        raise ValueError(f"literal build capped at m + n <= {BRUTE_BUILD_BOUND}")
    return projector_element(rep) * embed_product(
        tensor(projector_element(r1), projector_element(r2))
    )


class LrState:
    """Element of the restriction algebra over its idempotent basis."""

    def __init__(self, m: int, n: int, coeffs: dict):
        self.m = m
        self.n = n
        valid = set(lr_labels(m, n))
        clean = {}
        for label, val in coeffs.items():
            label = tuple(as_partition(p) for p in label)
            if label not in valid:
                raise ValueError(f"{label} has zero restriction coefficient")
            if val != 0:
                clean[label] = val
        self.coeffs = clean

    def g_inner(self, other: "LrState"):
        if (self.m, self.n) != (other.m, other.n):
            raise ValueError("mismatched sizes")
        acc = 0
        for label, a in self.coeffs.items():
            b = other.coeffs.get(label)
            if b is None:
                continue
            a_c = a.conjugate() if isinstance(a, complex) else a
            acc += a_c * b * lr_projector_norm_sq(*label)
        return acc

    def unit_amplitudes(self, order=None) -> np.ndarray:
        if order is None:
            order = lr_labels(self.m, self.n)
        amps = np.array(
            [
                complex(self.coeffs.get(label, 0))
                * float(lr_projector_norm_sq(*label)) ** 0.5
                for label in order
            ],
            dtype=complex,
        )
        norm = np.linalg.norm(amps)
        if norm == 0:
            raise ValueError("zero state has no amplitude vector")
        return amps / norm


def lr_projector_state(rep, r1, r2) -> LrState:
    label = tuple(as_partition(p) for p in (rep, r1, r2))
    return LrState(sum(label[1]), sum(label[2]), {label: Fraction(1)})


def identity_lr_state(m: int, n: int) -> LrState:
    """The identity of C[S_{m+n}] over the restriction idempotents, all ones."""
    return LrState(m, n, {label: Fraction(1) for label in lr_labels(m, n)})


def lr_detect(state: LrState, seed: int = 0) -> MultiFamilyTranscript:
    """Identify a restriction idempotent with up to three signature families.

    Family "whole" estimates T_k of S_{m+n} (eigenvalue from R), "left" the
    embedded T_k of S_m (from R1), "right" the embedded T_k of S_n (from R2).
    A slot whose group has fewer than two diagrams is resolved for free and
    runs no circuit. Zero-coefficient labels are dropped up front.
    """
    m, n = state.m, state.n
    labels = [label for label in lr_labels(m, n) if state.coeffs.get(label)]
    rng = np.random.default_rng(seed)
    counters = GateCounters()
    transcript = MultiFamilyTranscript(sizes=(m + n, m, n), seed=seed)
    amps = state.unit_amplitudes(labels)
    detected: list[Partition | None] = [None, None, None]
    for slot, (name, size) in enumerate((("whole", m + n), ("left", m), ("right", n))):
        if len(partitions(size)) < 2:
            detected[slot] = partitions(size)[0]
            transcript.families.append(
                {"family": name, "rounds": [], "signature": [], "skipped": True}
            )
            continue
        rounds, sig, amps = _family_rounds(amps, labels, slot, size, rng, counters)
        transcript.families.append(
            {"family": name, "rounds": rounds, "signature": list(sig)}
        )
        table = signature_table(size, k_star(size))
        if sig not in table:
            raise ValueError(f"not an LR projector: {name} signature {sig}")
        detected[slot] = table[sig]
    transcript.detected = tuple(detected)
    transcript.counters = counters
    if transcript.detected not in set(lr_labels(m, n)):
        raise ValueError(f"detected triple {transcript.detected} is not a valid label")
    return transcript
