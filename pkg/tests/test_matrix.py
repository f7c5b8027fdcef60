from __future__ import annotations

import json

import pytest
from hypothesis import given, settings

import oracles
from strategies import matrices

from ccgame.config import cell_guard
from ccgame.errors import DomainError, ShapeError, SizeError
from ccgame.interlace import alternating_game, interlace_power
from ccgame.matrix import (
    PHI0,
    GameMatrix,
    load_matrix,
    min_family_width,
    new_matrix,
    pad_to_family,
    phi_dimensions,
    save_matrix,
    transpose,
)
from ccgame.solver import solve_exact


def test_new_matrix_examples():
    assert new_matrix([[1, 0]], 2) == PHI0
    M = new_matrix([[0]], 1)
    assert M.shape == (1, 1) and M.is_constant()
    T = new_matrix([[1, 2], [0, 1]], 3)
    assert T.alphabet == 3 and T.value(0, 1) == 2


def test_new_matrix_errors():
    with pytest.raises(ShapeError):
        new_matrix([[1, 0], [1]], 2)
    with pytest.raises(ShapeError):
        new_matrix([], 2)
    with pytest.raises(DomainError):
        new_matrix([[2]], 2)
    with pytest.raises(DomainError):
        new_matrix([[-1]], 2)


def test_cells_are_read_only():
    with pytest.raises(ValueError):
        PHI0.cells[0, 0] = 0


def test_equality_needs_alphabet():
    assert new_matrix([[1, 0]], 2) != new_matrix([[1, 0]], 3)
    assert hash(new_matrix([[1, 0]], 2)) == hash(PHI0)


def test_transpose_examples():
    assert transpose(PHI0).tolist() == [[1], [0]]
    assert transpose(new_matrix([[1, 1, 0, 0], [1, 0, 1, 0]])).tolist() == [[1, 1], [1, 0], [0, 1], [0, 0]]
    S = new_matrix([[1, 0], [0, 1]])
    assert transpose(S) == S


@given(matrices())
def test_transpose_is_an_involution(M):
    assert transpose(transpose(M)) == M
    assert transpose(M).shape == (M.cols, M.rows)


@given(matrices())
def test_json_round_trip(M):
    assert GameMatrix.loads(M.dumps()) == M
    data = json.loads(M.dumps())
    assert set(data) == {"m", "n", "alphabet", "rows"}


def test_json_checks_declared_shape():
    with pytest.raises(ShapeError):
        GameMatrix.from_dict({"m": 2, "n": 2, "alphabet": 2, "rows": [[1, 0]]})
    with pytest.raises(ShapeError):
        GameMatrix.from_dict({"m": 1, "n": 2, "rows": [[1, 0]]})


def test_save_and_load(tmp_path):
    path = tmp_path / "m.json"
    save_matrix(PHI0, path)
    assert path.read_text() == '{"m": 1, "n": 2, "alphabet": 2, "rows": [[1, 0]]}\n'
    assert load_matrix(path) == PHI0


def test_phi_dimensions_examples():
    assert (phi_dimensions(3, 0).rows, phi_dimensions(3, 0).cols) == (1, 2)
    assert (phi_dimensions(3, 1).rows, phi_dimensions(3, 1).cols) == (8, 3)
    assert (phi_dimensions(3, 2).rows, phi_dimensions(3, 2).cols) == (27, 24)
    with pytest.raises(DomainError):
        phi_dimensions(1, 0)


@pytest.mark.parametrize("B", [2, 3, 4, 5])
@pytest.mark.parametrize("i", range(8))
def test_phi_dimensions_follow_the_recursion(B, i):
    d = phi_dimensions(B, i)
    assert (d.rows, d.cols) == oracles.phi_dims_recursive(B, i)


def test_phi_dimensions_exceed_machine_words():
    d = phi_dimensions(3, 7)
    assert d.rows > 2**64
    assert d.cells == d.rows * d.cols


@pytest.mark.parametrize("B,i", [(2, 0), (2, 1), (2, 2), (2, 3), (3, 0), (3, 1), (3, 2)])
def test_phi_dimensions_match_construction(B, i):
    d = phi_dimensions(B, i)
    assert alternating_game(B, i).shape == (d.rows, d.cols)


def test_pad_to_family_examples():
    assert pad_to_family(PHI0, 1).tolist() == [[1, 0], [0, 0]]
    assert pad_to_family(new_matrix([[1]]), 1).tolist() == [[1, 0], [0, 0]]
    A2 = interlace_power(PHI0, 2)
    P = pad_to_family(A2, 2)
    assert P.shape == (4, 4) and P.tolist()[:2] == A2.tolist()
    # the zero padding costs one extra bit here; the search oracle agrees
    assert solve_exact(P).depth == oracles.exact_depth(P.tolist()) == 3
    assert solve_exact(pad_to_family(PHI0, 1)).depth == 2


def test_pad_to_family_errors():
    with pytest.raises(DomainError):
        pad_to_family(new_matrix([[1, 2]], 3), 1)
    with pytest.raises(DomainError):
        pad_to_family(new_matrix([[1, 0, 1]]), 1)
    with cell_guard(8), pytest.raises(SizeError):
        pad_to_family(PHI0, 2)


def test_min_family_width():
    assert min_family_width(new_matrix([[1]])) == 0
    assert min_family_width(PHI0) == 1
    assert min_family_width(new_matrix([[1, 0, 1]])) == 2


def test_padding_costs_at_most_two_bits_on_3x3():
    # the original is a subgame of the padded matrix, and one bit per player
    # tells whether the inputs fall inside it
    grew = 0
    for a in oracles.all_boolean(3, 3):
        M = new_matrix(a)
        if M.is_constant():
            continue
        d = solve_exact(M).depth
        e = solve_exact(pad_to_family(M, min_family_width(M))).depth
        assert d <= e <= d + 2
        grew += e > d
    assert grew == 210
