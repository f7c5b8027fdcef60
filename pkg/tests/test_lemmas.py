from __future__ import annotations

import json
from fractions import Fraction

import pytest

import oracles

from ccgame.errors import UsageError
from ccgame.interlace import alternating_game
from ccgame.lemmas import GRIDS, LEMMA_IDS, LemmaReport, named_matrix, rank_claim_bound, run_lemma_suite

F = Fraction


def test_rank_claim_example():
    report = run_lemma_suite("rank-claim", {"p": [2, 3], "x": ["1"], "y": ["1/2", "3/4", "1"]})
    assert report.status == "pass" and report.instances == 6


def test_monotonicity_example():
    report = run_lemma_suite("monotonicity", {"M": ["phi0"], "p": [1, 2], "x": ["1/2", "1"], "y": ["1/2", "1"]})
    assert report.status == "pass" and report.instances > 0


def test_transpose_bracket_example():
    report = run_lemma_suite("transpose-bracket", {"M": ["phi0^2"], "x": ["1/2", "1"], "y": ["1/2", "1"]})
    assert report.status == "pass" and report.instances == 4


def test_unknown_lemma_and_preset():
    with pytest.raises(UsageError):
        run_lemma_suite("no-such-lemma")
    with pytest.raises(UsageError):
        run_lemma_suite("rank-claim", "huge")
    with pytest.raises(UsageError):
        named_matrix("phi9")


def test_rank_claim_bound():
    assert rank_claim_bound(3, F(3, 4)) == 2
    assert rank_claim_bound(2, F(1, 2)) == 0
    assert rank_claim_bound(3, F(1, 2)) == 1
    assert rank_claim_bound(1, F(1, 2)) == 0
    assert rank_claim_bound(2, 1) == 1
    assert rank_claim_bound(5, 1) == 3


def test_every_lemma_has_presets():
    assert set(GRIDS) == set(LEMMA_IDS)
    for lemma in LEMMA_IDS:
        assert {"tiny", "small"} <= set(GRIDS[lemma])


@pytest.mark.parametrize("lemma", [l for l in LEMMA_IDS if l != "subprotocol-bounds"])
def test_tiny_presets_pass(lemma):
    report = run_lemma_suite(lemma, "tiny")
    assert report.status == "pass", report.violations
    assert report.instances > 0
    assert report.grid["preset"] == "tiny"


def test_runs_are_deterministic():
    a = run_lemma_suite("subgame-easier", "tiny", seed=3)
    b = run_lemma_suite("subgame-easier", "tiny", seed=3)
    assert a.dumps() == b.dumps()
    c = run_lemma_suite("subgame-easier", "tiny", seed=4)
    assert c.seed == 4


def test_report_json_round_trip():
    report = run_lemma_suite("subprotocol-bounds", "tiny")
    data = json.loads(report.dumps())
    assert set(data) >= {"lemma", "grid", "instances", "violations", "status", "seed"}
    assert "wall_time" not in data
    back = LemmaReport.from_dict(data)
    assert back.to_dict() == report.to_dict()


def _bracket_depth(a, p, x, y):
    return min(oracles.exact_depth(m) for m in oracles.bracket_members(a, p, x, y))


def test_row_growth_counterexample_reproduces_independently():
    # doubling the row fraction of a 4x2 game costs two bits, not one
    phi1 = oracles.alternating(2, 1)
    assert phi1 == alternating_game(2, 1).tolist()
    small = _bracket_depth(phi1, 2, F(1, 2), F(1))
    big = _bracket_depth(phi1, 2, F(1), F(1))
    assert (small, big) == (1, 3)
    assert 1 + small < big
    report = run_lemma_suite("subprotocol-bounds", {"M": ["phi1_B2"], "p": [2], "x": ["1/2"], "y": ["1"], "k": [1], "m": [0]})
    assert report.status == "fail"
    (v,) = report.violations
    assert (v["lhs"], v["rhs"]) == (2, 3)


def test_column_growth_has_no_violations():
    report = run_lemma_suite("subprotocol-bounds", {"M": ["phi0", "phi1_B2"], "p": [1, 2], "x": ["1/4", "1/2", "1"], "y": ["1/4", "1/2", "1"], "k": [0], "m": [0, 1, 2]})
    assert report.status == "pass"
