"""Bracket sets: every balanced extraction of an interlaced power.

``<M, p, x, y>`` is the set of matrices ``extract(interlace_power(M, p), R, C)``
where ``R`` holds exactly ``T = ceil(m*x)`` rows of each component and
``|C| = ceil(n**p * y)``.  The complexity of a set is the least complexity of
its members.

Row fractions are rational.  Column fractions may also be rational powers
``base**exp`` (:class:`RationalPower`); column counts are then computed
exactly with integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterator

from .config import DEFAULT_POLICY, SolverPolicy
from .errors import DomainError, SizeError
from .interlace import interlace_power
from .matrix import GameMatrix
from .projection import equipartitioned_row_sets
from .solver import RectSolver

DEFAULT_MEMBER_LIMIT = 250_000


@dataclass(frozen=True)
class RationalPower:
    """The real number ``base ** exp`` for rational ``base > 0`` and rational ``exp >= 0``."""

    base: Fraction
    exp: Fraction

    def __post_init__(self):
        object.__setattr__(self, "base", Fraction(self.base))
        object.__setattr__(self, "exp", Fraction(self.exp))
        if self.base <= 0 or self.exp < 0:
            raise DomainError(f"need base > 0 and exp >= 0, got {self.base}, {self.exp}")

    def __float__(self) -> float:
        return float(self.base) ** float(self.exp)

    def __str__(self) -> str:
        return f"({self.base})^({self.exp})"


def as_fraction(v) -> Fraction:
    return Fraction(v)


def normalize(y) -> Fraction | RationalPower:
    """Collapse integer-exponent powers to plain fractions."""
    if isinstance(y, RationalPower):
        if y.exp.denominator == 1:
            return y.base ** int(y.exp)
        if y.base == 1:
            return Fraction(1)
        return y
    return as_fraction(y)


def power(y, e) -> Fraction | RationalPower:
    """``y ** e`` for a fraction or rational power ``y``."""
    e = Fraction(e)
    if isinstance(y, RationalPower):
        return normalize(RationalPower(y.base, y.exp * e))
    return normalize(RationalPower(as_fraction(y), e))


def ceil_times(N: int, y) -> int:
    """Exact ``ceil(N * y)``."""
    y = normalize(y)
    if isinstance(y, Fraction):
        return math.ceil(N * y)
    # smallest c with c**b >= N**b * base**a, where exp = a/b and base = u/v
    a, b = y.exp.numerator, y.exp.denominator
    u, v = y.base.numerator, y.base.denominator
    target_num = N**b * u**a
    target_den = v**a
    c = max(0, math.floor(N * float(y)) - 2)
    while c**b * target_den < target_num:
        c += 1
    while c > 0 and (c - 1) ** b * target_den >= target_num:
        c -= 1
    return c


def fraction_le_one(y) -> bool:
    y = normalize(y)
    if isinstance(y, Fraction):
        return y <= 1
    return y.base <= 1 or y.exp == 0


def fraction_positive(y) -> bool:
    y = normalize(y)
    return y > 0 if isinstance(y, Fraction) else True


def fmt(y) -> str:
    y = normalize(y)
    return str(y)


@dataclass(frozen=True)
class BracketSpec:
    M: GameMatrix
    p: int
    x: Fraction
    y: Fraction | RationalPower

    def __post_init__(self):
        object.__setattr__(self, "x", as_fraction(self.x))
        object.__setattr__(self, "y", normalize(self.y))
        if self.p < 1:
            raise DomainError(f"component count must be >= 1, got {self.p}")
        if not 0 < self.x <= 1:
            raise DomainError(f"row fraction must lie in (0, 1], got {self.x}")
        if not (fraction_positive(self.y) and fraction_le_one(self.y)):
            raise DomainError(f"column fraction must lie in (0, 1], got {fmt(self.y)}")

    @property
    def T(self) -> int:
        return math.ceil(self.M.rows * self.x)

    @property
    def ncols(self) -> int:
        return ceil_times(self.M.cols**self.p, self.y)

    @property
    def member_shape(self) -> tuple[int, int]:
        return self.T * self.p, self.ncols

    def member_count(self) -> int:
        return math.comb(self.M.rows, self.T) ** self.p * math.comb(self.M.cols**self.p, self.ncols)

    def describe(self) -> dict:
        return {"p": self.p, "x": str(self.x), "y": fmt(self.y)}


def selections_by_counts(m: int, n: int, p: int, T: int, c: int, limit: int = DEFAULT_MEMBER_LIMIT):
    """``(R, C)`` pairs with ``T`` rows per component and ``c`` columns, lexicographically."""
    count = math.comb(m, T) ** p * math.comb(n**p, c)
    if count > limit:
        raise SizeError(f"bracket has {count} members, above the limit of {limit}", members=count, limit=limit)
    row_sets = list(equipartitioned_row_sets(m, T, p))
    for R in row_sets:
        for C in combinations(range(n**p), c):
            yield R, C


def bracket_selections(spec: BracketSpec, limit: int = DEFAULT_MEMBER_LIMIT) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every ``(R, C)`` pair of the bracket, in lexicographic order."""
    return selections_by_counts(spec.M.rows, spec.M.cols, spec.p, spec.T, spec.ncols, limit)


def enumerate_bracket(spec: BracketSpec, limit: int = DEFAULT_MEMBER_LIMIT) -> Iterator[GameMatrix]:
    """Every member of the bracket exactly once, in lexicographic ``(R, C)`` order."""
    selections = bracket_selections(spec, limit)
    A = interlace_power(spec.M, spec.p)
    for R, C in selections:
        yield GameMatrix(A.cells[list(R)][:, list(C)], A.alphabet)


@lru_cache(maxsize=32)
def ambient_solver(M: GameMatrix, p: int) -> RectSolver:
    """Shared solver for all extractions of one interlaced power."""
    return RectSolver(interlace_power(M, p))


def _mask(indices) -> int:
    out = 0
    for i in indices:
        out |= 1 << i
    return out


def complexity_by_counts(M: GameMatrix, p: int, T: int, c: int, limit: int = DEFAULT_MEMBER_LIMIT, policy: SolverPolicy | None = None):
    """``(D, R, C)``: the set complexity and the first member attaining it.

    ``p = 0`` denotes the empty interlacing, whose complexity is taken to be 0.
    """
    if p == 0:
        return 0, (), ()
    key = (M, p, T, c)
    hit = _complexity_cache.get(key)
    if hit is not None:
        return hit
    (policy or DEFAULT_POLICY).check(T * p, c)
    solver = ambient_solver(M, p)
    best = None
    for R, C in selections_by_counts(M.rows, M.cols, p, T, c, limit):
        budget = None if best is None else best[0] - 1
        d = solver.depth(_mask(R), _mask(C), budget)
        if d is not None:
            best = (d, R, C)
            if d == 0:
                break
    _complexity_cache[key] = best
    return best


_complexity_cache: dict = {}


def clear_caches() -> None:
    ambient_solver.cache_clear()
    _complexity_cache.clear()


def bracket_complexity(spec: BracketSpec, limit: int = DEFAULT_MEMBER_LIMIT, policy: SolverPolicy | None = None) -> int:
    """``min`` of the exact complexity over all members."""
    return complexity_by_counts(spec.M, spec.p, spec.T, spec.ncols, limit, policy)[0]


def bracket_argmin(spec: BracketSpec, limit: int = DEFAULT_MEMBER_LIMIT, policy: SolverPolicy | None = None):
    """``(D, R, C)`` for the first member attaining the set complexity."""
    return complexity_by_counts(spec.M, spec.p, spec.T, spec.ncols, limit, policy)
