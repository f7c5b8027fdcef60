from __future__ import annotations

import random

from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from strategies import matrices

from ccgame.bracket import BracketSpec, enumerate_bracket
from ccgame.interlace import interlace_power
from ccgame.matrix import PHI0, new_matrix
from ccgame.solver import solve_exact
from ccgame.subgame import SubgameWitness, is_subgame, set_is_subgame, verify_witness

DISPLAY_A2 = new_matrix([[1, 1, 0, 0], [1, 0, 1, 0]])


def test_examples():
    assert is_subgame(new_matrix([[1]]), new_matrix([[0, 0], [0, 1]])) is not None
    w = is_subgame(new_matrix([[1, 0], [0, 1]]), DISPLAY_A2)
    assert w == SubgameWitness((0, 1), (1, 2))
    assert is_subgame(new_matrix([[1, 1], [1, 1]]), new_matrix([[1, 0], [0, 1]])) is None


def test_identity_witness():
    M = interlace_power(PHI0, 3)
    w = is_subgame(M, M)
    assert w == SubgameWitness(tuple(range(M.rows)), tuple(range(M.cols)))


def test_rearrangement_is_allowed():
    # rows and columns may be reordered, not only selected
    assert is_subgame(new_matrix([[0, 1]]), PHI0) is not None
    assert is_subgame(new_matrix([[0], [1]]), new_matrix([[1], [0]])) is not None


def test_alphabet_and_size_mismatch():
    assert is_subgame(new_matrix([[2]], 3), new_matrix([[1, 0]])) is None
    assert is_subgame(new_matrix([[1, 0, 1]]), PHI0) is None


@settings(max_examples=150, deadline=None)
@given(matrices(max_rows=3, max_cols=3, max_alphabet=2), matrices(max_rows=4, max_cols=4, max_alphabet=2))
def test_agrees_with_brute_force(P, Q):
    w = is_subgame(P, Q)
    assert (w is not None) == oracles.brute_subgame(P.tolist(), Q.tolist())
    if w is not None:
        assert verify_witness(P, Q, w)


@settings(max_examples=80, deadline=None)
@given(matrices(max_rows=4, max_cols=4), st.randoms(use_true_random=False))
def test_extractions_are_found(Q, rnd):
    rows = rnd.sample(range(Q.rows), rnd.randint(1, Q.rows))
    cols = rnd.sample(range(Q.cols), rnd.randint(1, Q.cols))
    P = new_matrix([[Q.value(r, c) for c in cols] for r in rows], Q.alphabet)
    w = is_subgame(P, Q)
    assert w is not None and verify_witness(P, Q, w)


def test_transitivity_on_random_triples():
    rng = random.Random(7)
    for _ in range(200):
        R = new_matrix([[rng.randrange(2) for _ in range(4)] for _ in range(4)])
        qr, qc = rng.randint(1, 4), rng.randint(1, 4)
        Q = new_matrix([row[:qc] for row in R.tolist()[:qr]])
        pr, pc = rng.randint(1, qr), rng.randint(1, qc)
        P = new_matrix([row[:pc] for row in Q.tolist()[:pr]])
        assert is_subgame(P, Q) is not None and is_subgame(Q, R) is not None
        assert is_subgame(P, R) is not None


def test_subgames_are_not_harder():
    rng = random.Random(11)
    for _ in range(150):
        Q = new_matrix([[rng.randrange(3) for _ in range(4)] for _ in range(rng.randint(1, 4))], 3)
        pc = rng.randint(1, Q.cols)
        P = new_matrix([[rng.randrange(3) for _ in range(pc)] for _ in range(rng.randint(1, Q.rows))], 3)
        if is_subgame(P, Q) is not None:
            assert solve_exact(P).depth <= solve_exact(Q).depth


def test_witness_json():
    w = SubgameWitness((0, 2), (1,))
    assert w.to_dict() == {"rows": [0, 2], "cols": [1]}
    assert SubgameWitness.from_dict(w.to_dict()) == w


def test_verify_witness_rejects_bad_maps():
    Q = new_matrix([[1, 0], [0, 1]])
    P = new_matrix([[1]])
    assert not verify_witness(P, Q, SubgameWitness((0,), (1,)))
    assert not verify_witness(P, Q, SubgameWitness((0, 1), (0,)))
    assert not verify_witness(new_matrix([[1, 1]]), Q, SubgameWitness((0,), (0, 0)))
    assert not verify_witness(P, Q, SubgameWitness((5,), (0,)))


def test_set_examples():
    one = new_matrix([[1]])
    assert set_is_subgame([one], [PHI0, new_matrix([[0, 1], [1, 1]])])
    bracket = list(enumerate_bracket(BracketSpec(PHI0, 2, 1, "3/4")))
    assert set_is_subgame(bracket, [interlace_power(PHI0, 2)])
    assert not set_is_subgame([new_matrix([[1, 1], [1, 1]])], [new_matrix([[1, 0], [0, 1]])])
