"""Exact deterministic communication complexity of small game matrices.

A protocol is a binary tree.  At an internal node one player splits its
live inputs into a left block and the rest; leaves carry the answer.  The
cost is the depth, and ``D(M)`` is the least cost of a protocol computing
``M``.

:class:`RectSolver` decides ``D <= d`` for subrectangles of a fixed ambient
matrix by iterative deepening.  Rectangles are reduced by merging identical
rows and columns (which leaves ``D`` unchanged) and memoized on the reduced
index sets, with proven lower and upper bounds stored per entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Union

import numpy as np

from .config import DEFAULT_POLICY, SolverPolicy
from .errors import SizeError, StructureError
from .matrix import GameMatrix
from .rank import rational_rank

# --- protocol trees ---------------------------------------------------------


@dataclass(frozen=True)
class Leaf:
    value: int

    @property
    def depth(self) -> int:
        return 0

    def to_dict(self) -> dict:
        return {"node": "leaf", "value": self.value}


@dataclass(frozen=True)
class Internal:
    """``player`` ("row" or "col") sends 0 when its input is in ``left``."""

    player: str
    left: tuple[int, ...]
    children: tuple["ProtocolTree", "ProtocolTree"]

    @property
    def depth(self) -> int:
        return 1 + max(c.depth for c in self.children)

    def to_dict(self) -> dict:
        return {
            "node": "internal",
            "player": self.player,
            "left": list(self.left),
            "children": [c.to_dict() for c in self.children],
        }


ProtocolTree = Union[Leaf, Internal]


def tree_from_dict(data: dict) -> ProtocolTree:
    kind = data.get("node")
    if kind == "leaf":
        return Leaf(int(data["value"]))
    if kind == "internal":
        player = data.get("player")
        if player not in ("row", "col"):
            raise StructureError(f"unknown player {player!r}")
        children = data.get("children")
        if not isinstance(children, list) or len(children) != 2:
            raise StructureError("internal nodes need exactly two children")
        return Internal(player, tuple(int(i) for i in data["left"]), (tree_from_dict(children[0]), tree_from_dict(children[1])))
    raise StructureError(f"unknown node kind {kind!r}")


def tree_size(tree: ProtocolTree) -> int:
    if isinstance(tree, Leaf):
        return 1
    return tree_size(tree.children[0]) + tree_size(tree.children[1])


# --- bit helpers --------------------------------------------------------------


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _mask(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def _ceil_log2(k: int) -> int:
    return max(0, (k - 1).bit_length())


def _splits(mask: int) -> Iterator[int]:
    """Proper subsets of ``mask`` containing its lowest bit (each bipartition once)."""
    low = mask & -mask
    rest = mask ^ low
    sub = rest
    # walk every subset of ``rest``; the full one would give an empty right block
    while True:
        if sub != rest:
            yield low | sub
        if sub == 0:
            break
        sub = (sub - 1) & rest


@dataclass
class _Entry:
    lo: int
    hi: int = 1 << 30
    split: tuple[str, int] | None = None


@dataclass
class SolveResult:
    """Outcome of an exact solve.

    ``depth`` is ``D(M)`` and ``tree`` an optimal protocol, unless a depth
    budget was given and ``D(M)`` exceeds it, in which case both are ``None``
    and ``exceeds_budget`` is set.
    """

    depth: int | None
    tree: ProtocolTree | None
    exceeds_budget: bool = False
    budget: int | None = None
    stats: dict = field(default_factory=dict)

    def __iter__(self):
        yield self.depth
        yield self.tree


class RectSolver:
    """Memoized feasibility search over subrectangles of one ambient matrix."""

    def __init__(self, M: GameMatrix):
        self.M = M
        self.m, self.n = M.shape
        cells = M.cells.tolist()
        self._cells = cells
        self.values = sorted(M.values())
        # rowval[r][v]: columns where row r holds v; colval[c][v]: rows where column c holds v
        self.rowval = [[0] * M.alphabet for _ in range(self.m)]
        self.colval = [[0] * M.alphabet for _ in range(self.n)]
        for r, row in enumerate(cells):
            for c, v in enumerate(row):
                self.rowval[r][v] |= 1 << c
                self.colval[c][v] |= 1 << r
        self.memo: dict[tuple[int, int], _Entry] = {}
        self._rank_lb: dict[tuple[int, int], int] = {}
        self.nodes = 0

    # -- reduction ----------------------------------------------------------

    def reduce(self, R: int, C: int) -> tuple[int, int, dict[int, int], dict[int, int]]:
        """Merge identical rows and columns; returns the reduced masks and representative maps."""
        vals = self.values
        rep_r: dict[int, int] = {}
        seen: dict[tuple, int] = {}
        RR = 0
        for r in _bits(R):
            rv = self.rowval[r]
            sig = tuple(rv[v] & C for v in vals)
            first = seen.get(sig)
            if first is None:
                seen[sig] = r
                RR |= 1 << r
                rep_r[r] = r
            else:
                rep_r[r] = first
        rep_c: dict[int, int] = {}
        seen = {}
        CC = 0
        for c in _bits(C):
            cv = self.colval[c]
            sig = tuple(cv[v] & RR for v in vals)
            first = seen.get(sig)
            if first is None:
                seen[sig] = c
                CC |= 1 << c
                rep_c[c] = c
            else:
                rep_c[c] = first
        return RR, CC, rep_r, rep_c

    def key(self, R: int, C: int) -> tuple[int, int]:
        RR, CC, _, _ = self.reduce(R, C)
        return RR, CC

    def _line_values(self, R: int, C: int) -> list[int]:
        """Values present in a rectangle, in increasing order."""
        out = []
        for v in self.values:
            for r in _bits(R):
                if self.rowval[r][v] & C:
                    out.append(v)
                    break
        return out

    # -- bounds ---------------------------------------------------------------

    def rank_bound(self, key: tuple[int, int]) -> int:
        got = self._rank_lb.get(key)
        if got is None:
            R, C = key
            rows, cols = _bits(R), _bits(C)
            sub = self.M.cells[np.ix_(rows, cols)]
            total = 0
            for v in self.values:
                ind = (sub == v).astype(np.int64)
                if ind.any():
                    total += rational_rank(ind)
            got = _ceil_log2(total)
            self._rank_lb[key] = got
        return got

    def _entry(self, key: tuple[int, int]) -> _Entry:
        e = self.memo.get(key)
        if e is not None:
            return e
        R, C = key
        nr, nc = R.bit_count(), C.bit_count()
        if nr == 1 or nc == 1:
            d = _ceil_log2(len(self._line_values(R, C)))
            e = _Entry(d, d)
        else:
            # two distinct rows and two distinct columns rule out depth <= 1
            lo = max(2, _ceil_log2(len(self._line_values(R, C))))
            e = _Entry(lo)
        self.memo[key] = e
        return e

    def lower_bound(self, key: tuple[int, int]) -> int:
        e = self._entry(key)
        if e.lo < e.hi and e.lo < 64:
            lb = self.rank_bound(key)
            if lb > e.lo:
                e.lo = lb
        return e.lo

    # -- search ---------------------------------------------------------------

    def feasible(self, key: tuple[int, int], d: int) -> bool:
        """Is there a protocol of depth ``<= d`` for the reduced rectangle ``key``?"""
        e = self._entry(key)
        if e.hi <= d:
            return True
        if e.lo > d:
            return False
        if self.lower_bound(key) > d:
            return False
        self.nodes += 1
        R, C = key
        sides = [("row", R), ("col", C)]
        # smaller side first
        if C.bit_count() < R.bit_count():
            sides.reverse()
        for player, live in sides:
            for A in _splits(live):
                B = live ^ A
                if player == "row":
                    k1, k2 = self.key(A, C), self.key(B, C)
                else:
                    k1, k2 = self.key(R, A), self.key(R, B)
                e1, e2 = self._entry(k1), self._entry(k2)
                if e1.lo > d - 1 or e2.lo > d - 1:
                    continue
                # cheaper-to-refute child first
                if e2.lo > e1.lo:
                    k1, k2 = k2, k1
                if self.feasible(k1, d - 1) and self.feasible(k2, d - 1):
                    e.hi = d
                    e.split = (player, A)
                    return True
        e.lo = d + 1
        return False

    def depth(self, R: int, C: int, budget: int | None = None) -> int | None:
        """Exact ``D`` of the rectangle, or ``None`` if it exceeds ``budget``."""
        key = self.key(R, C)
        d = self.lower_bound(key)
        while True:
            if budget is not None and d > budget:
                return None
            if self.feasible(key, d):
                return d
            d += 1

    # -- trees ------------------------------------------------------------------

    def tree(self, R: int, C: int) -> ProtocolTree:
        """An optimal protocol for the rectangle (solving it first if needed)."""
        RR, CC, rep_r, rep_c = self.reduce(R, C)
        key = (RR, CC)
        e = self._entry(key)
        if e.lo < e.hi:
            self.depth(R, C)
        if e.hi == 0:
            r, c = (R & -R).bit_length() - 1, (C & -C).bit_length() - 1
            return Leaf(self._cells[r][c])
        if e.split is None:
            player, A = self._line_split(RR, CC)
        else:
            player, A = e.split
        if player == "row":
            left = _mask(r for r in _bits(R) if (A >> rep_r[r]) & 1)
            return Internal("row", tuple(_bits(left)), (self.tree(left, C), self.tree(R ^ left, C)))
        left = _mask(c for c in _bits(C) if (A >> rep_c[c]) & 1)
        return Internal("col", tuple(_bits(left)), (self.tree(R, left), self.tree(R, C ^ left)))

    def _line_split(self, R: int, C: int) -> tuple[str, int]:
        """Value-halving split for a reduced single row or single column."""
        vals = self._line_values(R, C)
        low = set(vals[: (len(vals) + 1) // 2])
        if R.bit_count() == 1:
            r = R.bit_length() - 1
            return "col", _mask(c for c in _bits(C) if self._cells[r][c] in low)
        c = C.bit_length() - 1
        return "row", _mask(r for r in _bits(R) if self._cells[r][c] in low)

    def full(self) -> tuple[int, int]:
        return (1 << self.m) - 1, (1 << self.n) - 1


def solve_exact(M: GameMatrix, depth_budget: int | None = None, policy: SolverPolicy | None = None) -> SolveResult:
    """``D(M)`` with an optimal protocol tree."""
    (policy or DEFAULT_POLICY).check(M.rows, M.cols)
    solver = RectSolver(M)
    R, C = solver.full()
    d = solver.depth(R, C, depth_budget)
    stats = {"nodes": solver.nodes, "memo": len(solver.memo)}
    if d is None:
        return SolveResult(None, None, True, depth_budget, stats)
    return SolveResult(d, solver.tree(R, C), False, depth_budget, stats)


def communication_complexity(M: GameMatrix, policy: SolverPolicy | None = None) -> int:
    return solve_exact(M, policy=policy).depth


# --- independent oracle ----------------------------------------------------------


REFERENCE_MAX_SIDE = 4
REFERENCE_MAX_ALPHABET = 4


def solve_reference(M: GameMatrix) -> int:
    """Plain memoized recursion over every bipartition, with no pruning or reduction."""
    if M.rows > REFERENCE_MAX_SIDE or M.cols > REFERENCE_MAX_SIDE or M.alphabet > REFERENCE_MAX_ALPHABET:
        raise SizeError(
            f"reference solver is capped at {REFERENCE_MAX_SIDE}x{REFERENCE_MAX_SIDE}, "
            f"alphabet {REFERENCE_MAX_ALPHABET}; got {M.rows}x{M.cols}, alphabet {M.alphabet}",
            rows=M.rows,
            cols=M.cols,
        )
    cells = M.cells.tolist()
    memo: dict[tuple[int, int], int] = {}

    def proper_subsets(mask: int):
        sub = (mask - 1) & mask
        while sub:
            yield sub
            sub = (sub - 1) & mask

    def D(R: int, C: int) -> int:
        if (R, C) in memo:
            return memo[(R, C)]
        vals = {cells[r][c] for r in _bits(R) for c in _bits(C)}
        if len(vals) == 1:
            best = 0
        else:
            best = math.inf
            for A in proper_subsets(R):
                best = min(best, 1 + max(D(A, C), D(R ^ A, C)))
            for A in proper_subsets(C):
                best = min(best, 1 + max(D(R, A), D(R, C ^ A)))
        memo[(R, C)] = best
        return best

    return D((1 << M.rows) - 1, (1 << M.cols) - 1)


# --- lower bounds -------------------------------------------------------------------


def lower_bound_leafcount(M: GameMatrix) -> int:
    """``ceil(log2(sum over values v of rank(M == v)))``, ranks over the rationals."""
    total = 0
    for v in M.values():
        total += rational_rank((M.cells == v).astype(np.int64))
    return _ceil_log2(total)


def lower_bound_rank(M: GameMatrix) -> int:
    """The plain log-rank bound ``ceil(log2 rank(M))`` of the value matrix itself."""
    return _ceil_log2(rational_rank(M.cells.astype(np.int64)))


# --- verification --------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyResult:
    ok: bool
    cost: int
    mismatches: int = 0

    def __iter__(self):
        yield self.ok
        yield self.cost


def protocol_verify(tree: ProtocolTree, M: GameMatrix) -> VerifyResult:
    """Walk every input pair through ``tree`` and compare leaf labels with ``M``.

    Pairs are walked a rectangle at a time: all inputs reaching a node form
    the product of the live rows and live columns there.
    """
    cells = M.cells
    bad = 0

    def walk(node: ProtocolTree, rows: list[int], cols: list[int]) -> None:
        nonlocal bad
        if isinstance(node, Leaf):
            block = cells[np.ix_(rows, cols)]
            bad += int((block != node.value).sum())
            return
        if not isinstance(node, Internal) or node.player not in ("row", "col"):
            raise StructureError(f"malformed node {node!r}")
        live = rows if node.player == "row" else cols
        left = set(node.left)
        if len(left) != len(node.left) or not left <= set(live):
            raise StructureError(f"{node.player} block {sorted(left)} is not a subset of the live indices {live}")
        if not left or len(left) == len(live):
            raise StructureError(f"{node.player} block must be a proper non-empty subset of {live}")
        a = [i for i in live if i in left]
        b = [i for i in live if i not in left]
        if node.player == "row":
            walk(node.children[0], a, cols)
            walk(node.children[1], b, cols)
        else:
            walk(node.children[0], rows, a)
            walk(node.children[1], rows, b)

    walk(tree, list(range(M.rows)), list(range(M.cols)))
    return VerifyResult(bad == 0, tree.depth, bad)


# --- greedy fallback ---------------------------------------------------------------------

GREEDY_FULL_SPLIT_SIDE = 10


def greedy_upper(M: GameMatrix) -> tuple[int, ProtocolTree]:
    """A valid (not necessarily optimal) protocol built top-down.

    Each node picks the split whose worse child has the smallest leaf-count
    lower bound, breaking ties by fewer cells in the larger child.  Candidate
    splits are every bipartition of a reduced side with at most
    ``GREEDY_FULL_SPLIT_SIDE`` entries, otherwise the splits induced by one
    row's (or column's) values.
    """
    solver = RectSolver(M)

    def candidates(R: int, C: int):
        for player, live, other in (("row", R, C), ("col", C, R)):
            if live.bit_count() < 2:
                continue
            if live.bit_count() <= GREEDY_FULL_SPLIT_SIDE:
                yield from ((player, A) for A in _splits(live))
                continue
            seen = set()
            lines = solver.colval if player == "row" else solver.rowval
            for o in _bits(other):
                for v in solver.values:
                    A = lines[o][v] & live
                    if A and A != live and A not in seen:
                        seen.add(A)
                        yield player, A

    def build(R: int, C: int) -> ProtocolTree:
        RR, CC, rep_r, rep_c = solver.reduce(R, C)
        if RR.bit_count() == 1 and CC.bit_count() == 1:
            return Leaf(solver._cells[RR.bit_length() - 1][CC.bit_length() - 1])
        if RR.bit_count() == 1 or CC.bit_count() == 1:
            choice = solver._line_split(RR, CC)
        else:
            best = None
            for player, A in candidates(RR, CC):
                B = (RR if player == "row" else CC) ^ A
                kids = [(A, CC), (B, CC)] if player == "row" else [(RR, A), (RR, B)]
                bounds = [solver.rank_bound(solver.key(*k)) for k in kids]
                sizes = [k[0].bit_count() * k[1].bit_count() for k in kids]
                score = (max(bounds), max(sizes))
                if best is None or score < best[0]:
                    best = (score, player, A)
            choice = best[1], best[2]
        player, A = choice
        if player == "row":
            left = _mask(r for r in _bits(R) if (A >> rep_r[r]) & 1)
            return Internal("row", tuple(_bits(left)), (build(left, C), build(R ^ left, C)))
        left = _mask(c for c in _bits(C) if (A >> rep_c[c]) & 1)
        return Internal("col", tuple(_bits(left)), (build(R, left), build(R, C ^ left)))

    R, C = solver.full()
    tree = build(R, C)
    return tree.depth, tree
