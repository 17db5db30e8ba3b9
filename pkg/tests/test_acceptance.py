"""Acceptance gate: one test and one printed pass/fail line per criterion.

Two criteria fail as stated and are kept faithful rather than weakened; their
tests print the analysis alongside the FAIL line. Everything else must pass
at the stated tolerances.
"""

import time
from fractions import Fraction
from itertools import permutations as iter_permutations
from math import factorial, sqrt

import numpy as np
import pytest
from conftest import record_criterion

from projdetect.centre import (
    content_sum,
    cycle_class_size,
    k_star,
    normalized_character,
)
from projdetect.symgroup import dimension, partitions


def emit(num: int, name: str, ok: bool, detail: str = "") -> bool:
    line = f"criterion {num:2d} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    record_criterion(line)
    print(line)
    return ok


EXPECTED_KSTAR = {}
for _n in (2, 3, 4, 5, 7):
    EXPECTED_KSTAR[_n] = 2
for _n in (6, *range(8, 15)):
    EXPECTED_KSTAR[_n] = 3
for _n in (*range(15, 24), 25, 26):
    EXPECTED_KSTAR[_n] = 4
for _n in (24, *range(27, 42)):
    EXPECTED_KSTAR[_n] = 5
for _n in (*range(42, 80), 81):
    EXPECTED_KSTAR[_n] = 6


def test_criterion_01_kstar_table():
    t0 = time.time()
    ok = all(k_star(n) == EXPECTED_KSTAR[n] for n in range(2, 27))
    ok = ok and k_star(24) == 5
    ok = ok and k_star(42) == 6
    elapsed = time.time() - t0
    ok = ok and elapsed < 60
    assert emit(1, "k*(n) table 2..26 and 42", ok, f"{elapsed:.1f}s")


def test_criterion_02_content_identity():
    identity_ok = all(
        normalized_character(rep, 2) == content_sum(rep)
        for n in range(2, 16)
        for rep in partitions(n)
    )
    claimed = {(6,): 15, (3, 2, 1): 0, (2, 2, 2): -3, (3, 3): 5, (4, 2): 5}
    actual = {rep: normalized_character(rep, 2) for rep in claimed}
    values_ok = actual == claimed
    detail = (
        "identity holds for n <= 15; the reference five-value list is wrong at "
        "(3,3): every T_2 eigenvalue there is 15*chi/5 = 3*chi, a multiple of 3, "
        f"so the claimed 5 is impossible; computed value {actual[(3, 3)]}"
    )
    emit(2, "T_2 content identity + reference n=6 values", identity_ok and values_ok, detail)
    assert identity_ok
    if not values_ok:
        pytest.fail(
            "faithful check of the reference value list: "
            f"expected {claimed}, computed {actual}. {detail}"
        )


def test_criterion_03_qpe_exactness():
    from projdetect.detection import detect_projector, t_bits
    from projdetect.qpe import DiagonalUnitary, phase_encode, qpe_run

    worst_wrong = 0.0
    ok = True
    for n in range(2, 9):
        for rep in partitions(n):
            transcript = detect_projector(rep, seed=0)
            ok = ok and transcript.identified_label == rep
            for row in transcript.rounds:
                t = row["t"]
                ok = ok and row["queries"] == t
                ok = ok and row["gates"] == 2 * t + t * (t - 1) // 2
            for k in range(2, k_star(n) + 1):
                t = t_bits(n, k)
                bound = cycle_class_size(n, k)
                value = normalized_character(rep, k)
                unitary = DiagonalUnitary((phase_encode(value, bound, t),))
                dist, _, _ = qpe_run(unitary, [1.0], t)
                target = int(phase_encode(value, bound, t) * (1 << t))
                wrong = float(dist.sum() - dist[target])
                worst_wrong = max(worst_wrong, wrong)
                ok = ok and wrong < 1e-12
    assert emit(
        3, "QPE exact identification n <= 8", ok, f"worst wrong-mass {worst_wrong:.2e}"
    )


def test_criterion_04_tail_bound():
    from projdetect.qpe import DiagonalUnitary, phase_tail_bound, qpe_run

    rng = np.random.default_rng(2024)
    shots = 10**5
    ok = True
    worst_margin = None
    for lam in (1 / 3, 1 / 7, sqrt(2) - 1):
        for t in (6, 8, 10):
            size = 1 << t
            dist, _, _ = qpe_run(DiagonalUnitary((lam,)), [1.0], t)
            sample = rng.choice(size, size=shots, p=dist / dist.sum())
            b = int(lam * size)
            err = np.minimum((sample - b) % size, (b - sample) % size)
            for p in (2, 3):
                e = (1 << (t - p)) - 1
                empirical = float(np.mean(err > e))
                bound = float(phase_tail_bound(t, p))
                ok = ok and empirical < bound
                margin = bound - empirical
                if worst_margin is None or margin < worst_margin:
                    worst_margin = margin
    assert emit(
        4,
        "inexact-phase tail bound, 18 settings x 1e5 shots",
        ok,
        f"smallest margin under the bound {worst_margin:.3g}",
    )


def test_criterion_05_regular_representation_lemmas():
    from projdetect.classical import preg_entry, tk_row_entry
    from projdetect.groupalgebra import identity_perm

    ok = True
    for n in range(2, 8):
        perms = list(iter_permutations(range(n)))
        # every mu at small n, identity and a transposition beyond that
        probes = perms if n <= 4 else [identity_perm(n), (1, 0) + tuple(range(2, n))]
        for rep in partitions(n):
            target = Fraction(dimension(rep) ** 2, factorial(n))
            for mu in probes:
                acc = sum(preg_entry(rep, gamma, mu) ** 2 for gamma in perms)
                ok = ok and acc == target
        for k in range(2, n + 1):
            for sigma in probes[:2]:
                acc = sum(tk_row_entry(sigma, tau, k) ** 2 for tau in perms)
                ok = ok and acc == cycle_class_size(n, k)
    assert emit(5, "regular-representation norm lemmas n <= 7", ok)


def test_criterion_06_randomized_baseline():
    from projdetect.classical import (
        classical_complexity_report,
        epsilon_star,
        epsilon_star_sq,
        estimate_eigenvalue,
        sample_budget,
    )
    from projdetect.detection import t_bits

    n = 6
    # parts that do hold: the n = 6..8 growth trend and the resolving-scale
    # detector, checked first so a failure further down cannot hide them
    report = classical_complexity_report([6, 7, 8])
    totals = {row["n"]: row["queries"] for row in report}
    assert totals == {6: 200488, 7: 111998, 8: 903208}
    ratios = [row["ratio"] for row in report]
    assert ratios[0] < ratios[1] < ratios[2], "classical/rate ratio must grow"
    for row in report:
        quantum = sum(t_bits(row["n"], k) for k in range(2, k_star(row["n"]) + 1))
        assert row["quantum_queries"] <= quantum
    resolving_ok = all(
        estimate_eigenvalue(rep, k, seed=s).value == normalized_character(rep, k)
        for rep in partitions(n)
        for k in range(2, k_star(n) + 1)
        for s in range(100)
    )
    assert resolving_ok, "resolving-scale estimates must be exact"

    # the criterion as stated: correctness at epsilon = epsilon_star and the
    # factor-20 query clause
    worst_fraction = 1.0
    worst_combo = None
    factor_ok = True
    for rep in partitions(n):
        for k in range(2, k_star(n) + 1):
            truth = normalized_character(rep, k)
            eps = epsilon_star(rep, k)
            hits = 0
            queries = None
            for s in range(100):
                est = estimate_eigenvalue(rep, k, seed=s, epsilon=eps)
                hits += est.value == truth
                queries = est.sample.queries
            fraction = hits / 100
            if fraction < worst_fraction:
                worst_fraction = fraction
                worst_combo = (rep, k)
            ratio = queries * epsilon_star_sq(rep, k)
            factor_ok = factor_ok and ratio <= 20
    stated_ok = worst_fraction >= 0.95 and factor_ok
    r, s_budget = sample_budget(epsilon=1.0)
    detail = (
        f"worst correctness {worst_fraction:.2f} at {worst_combo}; at the "
        "epsilon_star scale the estimator's one-sigma width is the full "
        "signature spread, e.g. (6,) at k=2 rounds to 0, the (3,2,1) column "
        "value, with no flag; and queries = 2rs+2 with r=18, s=ceil(9/eps^2) "
        f"is ~{2 * r * 9}x 1/eps*^2, never within 20x. Growth trend and "
        "resolving-scale detection (asserted above) do hold"
    )
    emit(6, "randomized baseline at epsilon_star", stated_ok, detail)
    if not stated_ok:
        pytest.fail("criterion as stated fails: " + detail)


def test_criterion_07_kronecker():
    from projdetect.groupalgebra import (
        delta,
        diagonal_map,
        inverse,
        projector_element,
        tensor,
    )
    from projdetect.kron_lr import (
        dim_K,
        kron_detect,
        kron_labels,
        kron_projector_brute,
        kronecker,
        pair_projector_state,
        ribbon_count,
    )

    ok = True
    for n in (2, 3, 4):
        nf2 = factorial(n) ** 2
        for a in partitions(n):
            for b in partitions(n):
                for c in partitions(n):
                    element = kron_projector_brute(a, b, c)
                    expected = Fraction(
                        dimension(a) * dimension(b) * dimension(c) * kronecker(a, b, c),
                        nf2,
                    )
                    ok = ok and delta(element) == expected
    n = 5
    nf2 = factorial(n) ** 2
    reps = partitions(n)
    diags = {c: diagonal_map(projector_element(c)) for c in reps}
    for a in reps:
        for b in reps:
            pair = tensor(projector_element(a), projector_element(b))
            for c in reps:
                acc = Fraction(0)
                for key, va in diags[c].data.items():
                    vb = pair.data.get(tuple(inverse(p) for p in key))
                    if vb:
                        acc += va * vb
                expected = Fraction(
                    dimension(a) * dimension(b) * dimension(c) * kronecker(a, b, c),
                    nf2,
                )
                ok = ok and acc == expected
    ok = ok and all(dim_K(m) == ribbon_count(m) for m in range(1, 9))
    for m in range(2, 7):
        for label in kron_labels(m):
            ok = ok and kron_detect(pair_projector_state(*label), seed=0).detected == label
    assert emit(7, "Kronecker: brute referee, dimension sum, detection", ok)


def test_criterion_08_littlewood_richardson():
    from projdetect.kron_lr import (
        dim_A,
        lr_coefficient,
        lr_coefficient_by_rule,
        lr_detect,
        lr_labels,
        lr_projector_state,
        necklace_count,
    )

    ok = True
    for total in range(2, 7):
        for m in range(1, total):
            n = total - m
            for rep in partitions(total):
                for r1 in partitions(m):
                    for r2 in partitions(n):
                        ok = ok and lr_coefficient(rep, r1, r2) == lr_coefficient_by_rule(rep, r1, r2)
    for total in range(2, 9):
        for m in range(1, total):
            ok = ok and dim_A(m, total - m) == necklace_count(m, total - m)
    for total in range(2, 9):
        for m in range(1, total):
            for label in lr_labels(m, total - m):
                ok = ok and lr_detect(lr_projector_state(*label), seed=0).detected == label
    assert emit(8, "LR: rule referee, dimension sum, detection m+n <= 8", ok)


def test_criterion_09_pair_idempotents():
    from projdetect.groupalgebra import identity_element
    from projdetect.kron_lr import kron_labels, kron_projector_brute

    ok = True
    for n in (2, 3, 4):
        elements = [kron_projector_brute(*label) for label in kron_labels(n)]
        total = None
        for e in elements:
            ok = ok and e * e == e
            total = e if total is None else total + e
        ok = ok and total == identity_element((n, n))
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                if i != j:
                    ok = ok and (a * b).support_size() == 0
    assert emit(9, "ptilde orthogonal idempotents resolve 1x1, n <= 4", ok)


def test_criterion_10_holographic_roundtrip():
    from projdetect.holographic import (
        dft_extract,
        fermion_config,
        holographic_complexity_report,
        holographic_roundtrip,
        u_profile,
    )

    ok = True
    worst_residual = 0.0
    for n in range(1, 11):
        for rep in partitions(n):
            for rho in (1.0, 2.0):
                result = holographic_roundtrip(rep, n + 1, rho=rho)
                ok = ok and result["match"]
                worst_residual = max(worst_residual, result["residual_max"])
    ok = ok and worst_residual < 1e-6
    # power-of-two grids force the radix-2 path; dft_extract raises beyond
    # 1e-10 disagreement at data scale, so surviving the call is the check
    for lam in (3, 7, 15):
        profile = u_profile(fermion_config((3, 2, 1), 7), 1.0, lam)
        result = dft_extract(profile)
        ok = ok and result.fft_butterflies is not None
    ok = ok and holographic_complexity_report(8, 0.0)["case"] == "1"
    ok = ok and holographic_complexity_report(8, 2.0)["case"] == "2"
    assert emit(
        10,
        "holographic roundtrip n <= 10, FFT check, beta cases",
        ok,
        f"worst residual {worst_residual:.2e}",
    )


def test_criterion_11_asymptotics_covered_by_ledgers():
    from projdetect.classical import classical_complexity_report
    from projdetect.detection import complexity_table
    from projdetect.holographic import cutoff_comparison_table

    quantum = complexity_table(range(2, 27))
    ok = len(quantum) == 25 and all(
        row["query_total"] > 0 and row["gate_total"] > 0 for row in quantum
    )
    classical = classical_complexity_report([6, 7, 8])
    ratios = [row["ratio"] for row in classical]
    ok = ok and ratios == sorted(ratios)
    holo = cutoff_comparison_table(10)
    ok = ok and all({"n", "moment_cutoff", "k_star"} <= set(r) for r in holo)
    assert emit(
        11,
        "asymptotic claims covered by finite-n counter ledgers",
        ok,
        "large-n scaling is out of desk-scale reach; counters and trends stand in",
    )
