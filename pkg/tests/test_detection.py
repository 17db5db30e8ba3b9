"""End-to-end signature detection and its exact cost accounting."""

import json
from fractions import Fraction
from math import log2

import numpy as np
import pytest

from projdetect.centre import CentreState, k_star, normalized_character, projector_state
from projdetect.detection import (
    alice_detect,
    bob_prepare,
    complexity_report,
    complexity_table,
    detect_projector,
    t_bits,
)
from projdetect.symgroup import partitions


def test_t_bits_examples():
    assert t_bits(6, 2) == 5  # 2*15+1 = 31
    assert t_bits(6, 3) == 7  # 2*40+1 = 81
    assert t_bits(8, 3) == 8  # 2*112+1 = 225
    assert t_bits(7, 2) == 6  # 2*21+1 = 43


def test_roundtrip_all_reps_small_n():
    for n in range(2, 8):
        for rep in partitions(n):
            transcript = detect_projector(rep, seed=0)
            assert transcript.identified_label == rep
            assert transcript.true_label == rep


def test_roundtrip_n8_many_seeds():
    for rep in partitions(8):
        for seed in (0, 1, 17):
            assert detect_projector(rep, seed=seed).identified_label == rep


def test_rounds_decode_normalized_characters():
    rep = (4, 2)
    transcript = detect_projector(rep, seed=3)
    assert len(transcript.rounds) == k_star(6) - 1
    for row in transcript.rounds:
        assert row["eigenvalue"] == normalized_character(rep, row["k"])
        assert row["queries"] == row["t"]
        assert row["gates"] == 2 * row["t"] + row["t"] * (row["t"] - 1) // 2


def test_counter_totals_match_rounds():
    transcript = detect_projector((3, 2, 1), seed=0)
    assert transcript.query_total == sum(r["queries"] for r in transcript.rounds)
    assert transcript.gate_total == sum(r["gates"] for r in transcript.rounds)
    assert transcript.query_total == 12
    assert transcript.gate_total == 55


def test_superposition_collapses_to_component():
    """A two-label state must land on one of its own labels, both reachable."""
    n = 6
    state = CentreState(
        n, {(4, 1, 1): Fraction(1), (3, 3): Fraction(1)}
    ).normalized()
    seen = set()
    for seed in range(24):
        got = alice_detect(state, n, seed=seed).identified_label
        assert got in {(4, 1, 1), (3, 3)}
        seen.add(got)
    assert seen == {(4, 1, 1), (3, 3)}


def test_bob_prepare_unit_norm():
    state = bob_prepare((3, 3))
    assert state.g_norm_sq() == pytest.approx(1.0, abs=1e-12)
    assert set(state.coeffs) == {(3, 3)}


def test_transcript_json_deterministic():
    a = detect_projector((3, 3), seed=7).to_json()
    b = detect_projector((3, 3), seed=7).to_json()
    assert a == b
    data = json.loads(a)
    assert data["schema"] == "1"
    assert data["identified_label"] == "3,3"
    assert data["n"] == 6
    assert data["seed"] == 7


def test_complexity_report_frozen_rows():
    r6 = complexity_report(6)
    assert r6["k_star"] == 3
    assert r6["query_total"] == 12
    assert r6["gate_total"] == 55
    assert [row["t"] for row in r6["per_k"]] == [5, 7]
    r7 = complexity_report(7)
    assert r7["query_total"] == 6
    assert r7["gate_total"] == 27


def test_totals_not_monotone_in_n():
    # k*(7) = 2 < k*(6) = 3 drags the n = 7 cost below the n = 6 cost
    assert complexity_report(7)["query_total"] < complexity_report(6)["query_total"]


def test_complexity_table_growth_bound():
    rows = complexity_table(range(6, 27))
    for row in rows:
        n, ks = row["n"], row["k_star"]
        assert row["query_total"] <= 2 * ks * ks * log2(n)
        assert len(row["register_bits"]) == ks - 1


def test_rejects_mismatched_n():
    state = projector_state((3, 1))
    with pytest.raises(ValueError):
        alice_detect(state, 5, seed=0)


def test_seeded_runs_identical():
    t1 = detect_projector((2, 2, 2), seed=5)
    t2 = detect_projector((2, 2, 2), seed=5)
    assert t1.to_dict() == t2.to_dict()
