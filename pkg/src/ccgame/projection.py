"""Row/column selections of interlaced games and the projection constructions.

A selection ``(R, C)`` of ``interlace_power(A, p)`` picks rows from the
``p`` component blocks ``[m*g, m*(g+1))`` and columns by their base-``n``
digit tuples.  Projecting onto a set ``Q`` of components keeps the rows of
those components and the digits at those positions, and always yields a
subgame of the original extraction.  The constructions below (balancing,
splitting, best cyclic window) choose ``Q`` to control the shape of the
result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, PreconditionError
from .interlace import interlace_power
from .matrix import GameMatrix
from .subgame import SubgameWitness, is_subgame, verify_witness

Number = int | Fraction


@dataclass(frozen=True)
class Selection:
    """Sorted row set ``R`` within ``[0, m*p)`` and column set ``C`` within ``[0, n**p)``."""

    R: tuple[int, ...]
    C: tuple[int, ...]
    m: int
    n: int
    p: int

    def __post_init__(self):
        if self.m < 1 or self.n < 1 or self.p < 1:
            raise DomainError(f"m, n, p must be >= 1, got {self.m}, {self.n}, {self.p}")
        R = tuple(sorted(set(self.R)))
        C = tuple(sorted(set(self.C)))
        if len(R) != len(self.R) or len(C) != len(self.C):
            raise DomainError("selection contains duplicate indices")
        if R and (R[0] < 0 or R[-1] >= self.m * self.p):
            raise DomainError(f"row index out of range [0, {self.m * self.p})")
        if C and (C[0] < 0 or C[-1] >= self.n**self.p):
            raise DomainError(f"column index out of range [0, {self.n ** self.p})")
        object.__setattr__(self, "R", R)
        object.__setattr__(self, "C", C)

    def block(self, g: int) -> tuple[int, ...]:
        """Selected rows of component ``g``, as offsets within the block."""
        lo = self.m * g
        return tuple(r - lo for r in self.R if lo <= r < lo + self.m)

    def block_counts(self) -> list[int]:
        counts = [0] * self.p
        for r in self.R:
            counts[r // self.m] += 1
        return counts

    def to_dict(self) -> dict:
        return {"R": list(self.R), "C": list(self.C), "m": self.m, "n": self.n, "p": self.p}

    @classmethod
    def from_dict(cls, data: dict) -> "Selection":
        return cls(tuple(data["R"]), tuple(data["C"]), data["m"], data["n"], data["p"])


def base_digits(c: int, n: int, p: int) -> tuple[int, ...]:
    """Digits ``(b_{p-1}, ..., b_0)`` of ``c`` in base ``n``, most significant first."""
    if n < 1 or p < 0:
        raise DomainError(f"invalid base {n} or width {p}")
    if not 0 <= c < n**p:
        raise DomainError(f"column {c} out of range [0, {n ** p})")
    return tuple((c // n**g) % n for g in reversed(range(p)))


def from_digits(digits: Sequence[int], n: int) -> int:
    """Inverse of :func:`base_digits`."""
    value = 0
    for d in digits:
        if not 0 <= d < n:
            raise DomainError(f"digit {d} out of range for base {n}")
        value = value * n + d
    return value


def digit(c: int, n: int, g: int) -> int:
    return (c // n**g) % n


def ceil_frac(T: Number) -> int:
    return math.ceil(Fraction(T))


def extract(M: GameMatrix, sel: Selection | None = None, *, R: Iterable[int] = (), C: Iterable[int] = ()) -> GameMatrix:
    """The ``|R| x |C|`` submatrix on sorted row and column indices."""
    if sel is not None:
        R, C = sel.R, sel.C
    rows = sorted(set(R))
    cols = sorted(set(C))
    if not rows or not cols:
        raise DomainError("extraction needs non-empty row and column sets")
    if rows[0] < 0 or rows[-1] >= M.rows or cols[0] < 0 or cols[-1] >= M.cols:
        raise DomainError(f"selection out of range for a {M.rows}x{M.cols} matrix")
    return GameMatrix(M.cells[rows][:, cols], M.alphabet)


def is_equipartitioned(R: Iterable[int], m: int, T: Number, p: int) -> bool:
    """Every component block of ``[0, m*p)`` holds exactly ``ceil(T)`` rows of ``R``."""
    t = ceil_frac(T)
    counts = [0] * p
    for r in R:
        if not 0 <= r < m * p:
            return False
        counts[r // m] += 1
    return all(c == t for c in counts)


def _check_Q(Q: Iterable[int], p: int) -> tuple[int, ...]:
    Qs = tuple(sorted(set(Q)))
    if not Qs:
        raise DomainError("projection needs a non-empty component set")
    if Qs[0] < 0 or Qs[-1] >= p:
        raise DomainError(f"component set {Qs} out of range [0, {p})")
    return Qs


def q_projection(sel: Selection, Q: Iterable[int]) -> Selection:
    """Keep the components in ``Q`` (renumbered in increasing order) and their column digits."""
    Qs = _check_Q(Q, sel.p)
    m, n = sel.m, sel.n
    Rset = set(sel.R)
    S = [m * g + r for g, q in enumerate(Qs) for r in range(m) if m * q + r in Rset]
    D = {sum(digit(c, n, q) * n**g for g, q in enumerate(Qs)) for c in sel.C}
    return Selection(tuple(S), tuple(sorted(D)), m, n, len(Qs))


def projection_witness(sel: Selection, Q: Iterable[int], sub: Selection) -> SubgameWitness:
    """Positional injections embedding ``sub`` (a subset of the ``Q``-projection) into ``sel``.

    Row ``m*g + r`` goes to ``m*Q[g] + r``; column ``d`` goes to the smallest
    column of ``C`` whose digits at ``Q`` spell ``d``.
    """
    Qs = _check_Q(Q, sel.p)
    m, n = sel.m, sel.n
    rpos = {r: i for i, r in enumerate(sel.R)}
    rows = tuple(rpos[m * Qs[s // m] + s % m] for s in sub.R)
    first: dict[int, int] = {}
    for i, c in enumerate(sel.C):
        key = sum(digit(c, n, q) * n**g for g, q in enumerate(Qs))
        first.setdefault(key, i)
    cols = tuple(first[d] for d in sub.C)
    return SubgameWitness(rows, cols)


@dataclass
class ProjectionCheck:
    projected: Selection
    witness: SubgameWitness | None
    constructive: bool
    vacuous: bool = False

    @property
    def ok(self) -> bool:
        return self.witness is not None


def check_projection_subgame(A: GameMatrix, p: int, R: Iterable[int], C: Iterable[int], Q: Iterable[int]) -> ProjectionCheck:
    """Confirm that the ``Q``-projection of ``(R, C)`` extracts a subgame of ``(R, C)``.

    The explicit row/column maps are tried first; if they fail to verify the
    complete subgame search decides.  An empty projection holds vacuously.  A result with ``witness=None`` is a
    counterexample to the projection property and is returned, not raised.
    """
    sel = Selection(tuple(R), tuple(C), A.rows, A.cols, p)
    proj = q_projection(sel, Q)
    if not proj.R or not proj.C:
        # an empty extraction embeds into anything
        return ProjectionCheck(proj, SubgameWitness((), ()), True, True)
    big = extract(interlace_power(A, p), sel)
    small = extract(interlace_power(A, proj.p), proj)
    w = projection_witness(sel, Q, proj)
    if verify_witness(small, big, w):
        return ProjectionCheck(proj, w, True)
    return ProjectionCheck(proj, is_subgame(small, big), False)


def _trim(sel: Selection, t: int) -> Selection:
    """Lowest ``t`` selected rows of every component."""
    keep = []
    for g in range(sel.p):
        rows = sel.block(g)
        if len(rows) < t:
            raise PreconditionError(f"component {g} has {len(rows)} rows, fewer than {t}")
        keep.extend(sel.m * g + r for r in rows[:t])
    return Selection(tuple(keep), sel.C, sel.m, sel.n, sel.p)


@dataclass(frozen=True)
class ProjectionResult:
    """A projected selection together with the components it came from."""

    ell: int
    S: tuple[int, ...]
    D: tuple[int, ...]
    Q: tuple[int, ...]
    witness: SubgameWitness

    def selection(self, m: int, n: int) -> Selection:
        return Selection(self.S, self.D, m, n, self.ell)


def balance_length(size_R: int, m: int, p: int, T: Number) -> int:
    """``ceil((|R| - p*T) / (m - T))``, the number of components balancing keeps."""
    T = Fraction(T)
    return math.ceil((size_R - p * T) / (m - T))


def balance_selection(A: GameMatrix, p: int, R: Iterable[int], C: Iterable[int], T: Number) -> ProjectionResult:
    """Project onto ``ell`` components each holding more than ``T`` rows, then trim to ``ceil(T)`` each.

    Components with at least ``m - T`` unselected rows are avoided; the
    lowest ``ell`` of the rest are kept.
    """
    m, n = A.shape
    T = Fraction(T)
    if not 0 <= T < m:
        raise PreconditionError(f"need 0 <= T < m, got T={T}, m={m}")
    t = math.ceil(T)
    if t < 1:
        raise PreconditionError("T must be positive so every component keeps at least one row")
    sel = Selection(tuple(R), tuple(C), m, n, p)
    if not sel.C:
        raise PreconditionError("column set is empty")
    ell = balance_length(len(sel.R), m, p, T)
    if ell <= 0:
        raise PreconditionError(f"balancing keeps ell={ell} components; need ell > 0")
    counts = sel.block_counts()
    avoid = {g for g in range(p) if m - counts[g] >= m - T}
    rest = [g for g in range(p) if g not in avoid]
    if len(rest) < ell:
        raise AssertionError(f"only {len(rest)} eligible components for ell={ell}")
    Q = tuple(rest[:ell])
    proj = _trim(q_projection(sel, Q), t)
    return ProjectionResult(ell, proj.R, proj.C, Q, projection_witness(sel, Q, proj))


def split_projection(A: GameMatrix, p: int, R1: Iterable[int], R2: Iterable[int], C: Iterable[int], T: Number) -> tuple[ProjectionResult, ProjectionResult]:
    """Split an equipartitioned row set between two projections whose column sets multiply to ``>= |C|``.

    Part 1 takes every component where it holds at least ``T/2`` rows; part 2
    takes the remaining components, where it necessarily holds more than
    ``T/2``.  Each side is trimmed to ``ceil(T/2)`` rows per component.
    """
    m, n = A.shape
    T = Fraction(T)
    R1 = tuple(sorted(set(R1)))
    R2 = tuple(sorted(set(R2)))
    if set(R1) & set(R2):
        raise PreconditionError("the two row sets overlap")
    if not is_equipartitioned(R1 + R2, m, T, p):
        raise PreconditionError(f"R1 | R2 is not {m},{T},{p}-equipartitioned")
    if not R1 or not R2:
        raise PreconditionError("both parts must be non-empty")
    sel1 = Selection(R1, tuple(C), m, n, p)
    sel2 = Selection(R2, tuple(C), m, n, p)
    if not sel1.C:
        raise PreconditionError("column set is empty")
    c1 = sel1.block_counts()
    Q1 = tuple(g for g in range(p) if c1[g] >= T / 2)
    Q2 = tuple(g for g in range(p) if g not in Q1)
    if not Q1 or not Q2:
        raise PreconditionError(f"one part keeps no components (|Q1|={len(Q1)}, |Q2|={len(Q2)})")
    t = math.ceil(T / 2)
    out = []
    for sel, Q in ((sel1, Q1), (sel2, Q2)):
        proj = _trim(q_projection(sel, Q), t)
        out.append(ProjectionResult(len(Q), proj.R, proj.C, Q, projection_witness(sel, Q, proj)))
    return out[0], out[1]


# --- cyclic windows and the product theorem --------------------------------


def cyclic_windows(p: int, ell: int) -> list[tuple[int, ...]]:
    """Windows ``{(i*ell + j) mod p : j < ell}`` for ``i < r``, where ``r*ell = p*q`` with ``q`` minimal.

    Every component lies in exactly ``q`` windows.
    """
    if not 1 <= ell <= p:
        raise DomainError(f"window length must be in [1, {p}], got {ell}")
    q = ell // math.gcd(p, ell)
    r = p * q // ell
    return [tuple((i * ell + j) % p for j in range(ell)) for i in range(r)]


def window_cover(p: int, ell: int) -> int:
    """How many windows of :func:`cyclic_windows` contain each component."""
    return ell // math.gcd(p, ell)


@dataclass(frozen=True)
class MaxProjectionResult:
    S: tuple[int, ...]
    D: tuple[int, ...]
    window: tuple[int, ...]
    index: int
    witness: SubgameWitness

    def selection(self, m: int, n: int) -> Selection:
        return Selection(self.S, self.D, m, n, len(self.window))


def max_projection(A: GameMatrix, p: int, R: Iterable[int], C: Iterable[int], ell: int) -> MaxProjectionResult:
    """Project onto the cyclic window of length ``ell`` keeping the most distinct columns.

    Some window keeps at least ``|C|**(ell/p)`` columns; ties go to the lowest
    window index.
    """
    m, n = A.shape
    if not 1 <= ell <= p:
        raise DomainError(f"ell must be in [1, {p}], got {ell}")
    sel = Selection(tuple(R), tuple(C), m, n, p)
    counts = sel.block_counts()
    if len(set(counts)) != 1 or counts[0] == 0:
        raise PreconditionError(f"row set is not equipartitioned (block counts {counts})")
    if not sel.C:
        raise PreconditionError("column set is empty")
    best = None
    for i, window in enumerate(cyclic_windows(p, ell)):
        Q = tuple(sorted(window))
        size = len({tuple(digit(c, n, q) for q in Q) for c in sel.C})
        if best is None or size > best[0]:
            best = (size, i, window)
    _, i, window = best
    proj = q_projection(sel, window)
    return MaxProjectionResult(proj.R, proj.C, window, i, projection_witness(sel, window, proj))


def power_at_least(a: int, b: int, num: int, den: int) -> bool:
    """Exact test of ``a >= b**(num/den)`` for non-negative integers."""
    return a**den >= b**num


@dataclass(frozen=True)
class ProductCheck:
    holds: bool
    lhs: int
    rhs: int

    @property
    def margin(self) -> int:
        return self.rhs - self.lhs


def _coverage(U: set, covers: Sequence[frozenset]) -> int:
    return min((sum(u in A for A in covers) for u in U), default=len(covers))


def product_theorem_check(U: Iterable, covers: Sequence[Iterable], k: int, F: Iterable[Iterable]) -> ProductCheck:
    """Compare ``|F|**k`` with the product of the trace sizes ``|{S & A_i : S in F}|``."""
    Uset = set(U)
    covs = [frozenset(A) for A in covers]
    fam = {frozenset(S) for S in F}
    if any(not A <= Uset for A in covs) or any(not S <= Uset for S in fam):
        raise PreconditionError("covers and family members must be subsets of U")
    if _coverage(Uset, covs) < k:
        raise PreconditionError(f"some element of U lies in fewer than {k} covers")
    lhs = len(fam) ** k
    rhs = math.prod(len({S & A for S in fam}) for A in covs)
    return ProductCheck(lhs <= rhs, lhs, rhs)


@dataclass(frozen=True)
class WindowCheck:
    holds: bool
    window: tuple[int, ...]
    family_size: int
    trace_size: int


def best_window(n: int, p: int, F: Iterable[Iterable[tuple[int, int]]], ell: int) -> WindowCheck:
    """Over ``U = [n] x [p]``, find the cyclic window whose trace of ``F`` is largest.

    ``holds`` records the exact comparison ``trace**p >= |F|**ell``.
    """
    fam = {frozenset(S) for S in F}
    for S in fam:
        for lam, g in S:
            if not (0 <= lam < n and 0 <= g < p):
                raise DomainError(f"element {(lam, g)} outside [{n}] x [{p}]")
    best = None
    for window in cyclic_windows(p, ell):
        A = frozenset((lam, g) for lam in range(n) for g in window)
        size = len({S & A for S in fam})
        if best is None or size > best[1]:
            best = (window, size)
    window, size = best
    return WindowCheck(size**p >= len(fam) ** ell, window, len(fam), size)


def equipartitioned_row_sets(m: int, T: Number, p: int):
    """Every ``m,T,p``-equipartitioned row set, in lexicographic order."""
    t = ceil_frac(T)
    blocks = list(combinations(range(m), t))

    def rec(g: int, prefix: tuple[int, ...]):
        if g == p:
            yield prefix
            return
        for b in blocks:
            yield from rec(g + 1, prefix + tuple(m * g + r for r in b))

    yield from rec(0, ())
