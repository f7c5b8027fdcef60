from __future__ import annotations

import math
from fractions import Fraction

import pytest

import oracles

from ccgame.errors import DomainError, SizeError
from ccgame.interlace import interlace_power
from ccgame.matrix import PHI0, identity, new_matrix
from ccgame.bracket import (
    BracketSpec,
    RationalPower,
    bracket_argmin,
    bracket_complexity,
    bracket_selections,
    ceil_times,
    enumerate_bracket,
    normalize,
    power,
)

F = Fraction


def test_singleton_bracket():
    spec = BracketSpec(PHI0, 1, 1, 1)
    assert list(enumerate_bracket(spec)) == [PHI0]
    assert bracket_complexity(spec) == 1


def test_bracket_phi0_p2_three_quarters():
    spec = BracketSpec(PHI0, 2, 1, F(3, 4))
    members = list(enumerate_bracket(spec))
    assert len(members) == 4 == spec.member_count()
    assert all(M.shape == (2, 3) for M in members)
    assert bracket_complexity(spec) == 2


def test_bracket_quarter_matches_oracle():
    spec = BracketSpec(PHI0, 2, 1, F(1, 4))
    members = [M.tolist() for M in enumerate_bracket(spec)]
    assert members == oracles.bracket_members([[1, 0]], 2, F(1), F(1, 4))
    assert bracket_complexity(spec) == min(oracles.exact_depth(a) for a in members) == 0


@pytest.mark.parametrize("p,x,y", [(2, F(1, 2), F(1, 2)), (2, F(1), F(1, 2)), (2, F(1, 2), F(3, 4)), (3, F(1, 2), F(1, 4))])
def test_bracket_members_match_oracle(p, x, y):
    spec = BracketSpec(identity(2), p, x, y)
    members = [M.tolist() for M in enumerate_bracket(spec)]
    expected = oracles.bracket_members(identity(2).tolist(), p, x, y)
    assert members == expected
    assert len(members) == spec.member_count()
    if max(len(members[0]), len(members[0][0])) <= 4:
        assert bracket_complexity(spec) == min(oracles.exact_depth(a) for a in members)


def test_member_count_closed_form():
    for p in (1, 2, 3):
        for x in (F(1, 2), F(1)):
            for y in (F(1, 4), F(1, 2), F(1)):
                spec = BracketSpec(identity(2), p, x, y)
                T = math.ceil(2 * x)
                c = math.ceil(2**p * y)
                assert spec.member_count() == math.comb(2, T) ** p * math.comb(2**p, c)


def test_selections_are_lexicographic():
    sels = list(bracket_selections(BracketSpec(identity(2), 2, F(1, 2), F(1, 2))))
    assert sels == sorted(sels)
    assert len(set(sels)) == len(sels)


def test_member_limit():
    spec = BracketSpec(identity(2), 4, F(1, 2), F(1, 2))
    with pytest.raises(SizeError) as info:
        list(enumerate_bracket(spec, limit=1000))
    assert info.value.info["members"] == spec.member_count()
    assert info.value.info["limit"] == 1000


def test_argmin_is_a_member_attaining_the_minimum():
    spec = BracketSpec(PHI0, 2, 1, F(3, 4))
    d, R, C = bracket_argmin(spec)
    A = interlace_power(PHI0, 2)
    member = [[A.cells[r, c] for c in C] for r in R]
    assert oracles.exact_depth(member) == d


def test_domain_errors():
    with pytest.raises(DomainError):
        BracketSpec(PHI0, 0, 1, 1)
    with pytest.raises(DomainError):
        BracketSpec(PHI0, 1, 0, 1)
    with pytest.raises(DomainError):
        BracketSpec(PHI0, 1, F(3, 2), 1)
    with pytest.raises(DomainError):
        BracketSpec(PHI0, 1, 1, F(5, 4))
    with pytest.raises(DomainError):
        BracketSpec(PHI0, 1, 1, RationalPower(2, F(1, 2)))
    with pytest.raises(DomainError):
        RationalPower(0, 1)


def test_rational_powers_are_exact():
    assert normalize(RationalPower(F(1, 2), 2)) == F(1, 4)
    assert normalize(RationalPower(1, F(1, 3))) == 1
    y = power(F(1, 2), F(1, 2))
    assert isinstance(y, RationalPower)
    # ceil(16 / sqrt 2) = ceil(11.31..) = 12
    assert ceil_times(16, y) == 12
    # exact boundary: 8 * (1/4)^(1/2) = 4
    assert ceil_times(8, RationalPower(F(1, 4), F(1, 2))) == 4
    for N in range(1, 200):
        c = ceil_times(N, RationalPower(F(1, 2), F(1, 3)))
        assert c**3 * 2 >= N**3 and (c - 1) ** 3 * 2 < N**3
    assert power(y, 2) == F(1, 2)


def test_spec_description():
    spec = BracketSpec(PHI0, 2, F(1, 2), power(F(1, 2), F(1, 2)))
    assert spec.describe() == {"p": 2, "x": "1/2", "y": "(1/2)^(1/2)"}
    assert spec.member_shape == (2, 3)
