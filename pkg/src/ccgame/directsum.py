"""Direct-sum powers and the one-round upper bound for interlaced games.

``direct_sum_power(f, l)`` answers ``l`` independent instances of ``f`` at
once.  Inputs are tuples encoded in mixed radix with component 0 least
significant; the output tuple ``(f(x_0, y_0), ..., f(x_{l-1}, y_{l-1}))`` is
encoded the same way over the alphabet ``|Z|**l``.

For the interlaced game ``G = direct_sum_power(interlace_power(f, kappa), l)``
each row ``x`` determines a component tuple ``u`` in ``[kappa]**l``.  Once
``u`` is known, ``G`` on those rows is a relabelling of ``f**l``:
``G(x, y) = f**l(sigma(x), tau_u(y))``.  So the row player announces ``u`` and
both players then run any protocol for ``f**l``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_POLICY, SolverPolicy, check_cells
from .errors import DomainError, PreconditionError
from .interlace import interlace_power
from .lemmas import LemmaReport
from .matrix import GameMatrix, transpose
from .solver import Internal, Leaf, ProtocolTree, protocol_verify, solve_exact


def direct_sum_power(f: GameMatrix, l: int) -> GameMatrix:
    if l < 1:
        raise DomainError(f"number of copies must be >= 1, got {l}")
    m, n = f.shape
    Z = f.alphabet
    check_cells(m**l, n**l, f"direct sum (l={l})")
    out = f.cells.astype(np.int64)
    base = f.cells.astype(np.int64)
    for k in range(1, l):
        # new copy is the most significant component of rows, columns and values
        out = base[:, None, :, None] * Z**k + out[None, :, None, :]
        out = out.reshape(m ** (k + 1), n ** (k + 1))
    return GameMatrix(out, Z**l)


@dataclass(frozen=True)
class LiftMaps:
    """Index maps between ``(interlace_power(f, kappa))**l`` and ``f**l``."""

    m: int
    n: int
    kappa: int
    l: int

    def components(self, x: int) -> tuple[int, ...]:
        """The component tuple ``u`` of a lifted row."""
        mk = self.m * self.kappa
        return tuple((x // mk**i) % mk // self.m for i in range(self.l))

    def class_index(self, u: tuple[int, ...]) -> int:
        return sum(g * self.kappa**i for i, g in enumerate(u))

    def sigma(self, x: int) -> int:
        mk = self.m * self.kappa
        return sum(((x // mk**i) % mk % self.m) * self.m**i for i in range(self.l))

    def tau(self, u: tuple[int, ...], y: int) -> int:
        nk = self.n**self.kappa
        return sum((((y // nk**i) % nk) // self.n ** u[i] % self.n) * self.n**i for i in range(self.l))

    @property
    def lifted_rows(self) -> int:
        return (self.m * self.kappa) ** self.l

    @property
    def lifted_cols(self) -> int:
        return self.n ** (self.kappa * self.l)

    def row_classes(self) -> dict[tuple[int, ...], list[int]]:
        """The partition of lifted rows by component tuple."""
        classes: dict[tuple[int, ...], list[int]] = {}
        for x in range(self.lifted_rows):
            classes.setdefault(self.components(x), []).append(x)
        return classes


def announcement_bits(kappa: int, l: int) -> int:
    """``ceil(l * log2(kappa))``, computed exactly as ``ceil(log2(kappa**l))``."""
    return max(0, (kappa**l - 1).bit_length())


def check_lift_identity(f: GameMatrix, kappa: int, l: int) -> bool:
    """Exhaustively confirm ``G(x, y) = f**l(sigma(x), tau_u(y))`` for the lifted game ``G``."""
    G = direct_sum_power(interlace_power(f, kappa), l).cells
    F = direct_sum_power(f, l).cells
    maps = LiftMaps(f.rows, f.cols, kappa, l)
    for x in range(maps.lifted_rows):
        u = maps.components(x)
        s = maps.sigma(x)
        for y in range(maps.lifted_cols):
            if G[x, y] != F[s, maps.tau(u, y)]:
                return False
    return True


def lift_protocol(P: ProtocolTree, f: GameMatrix, kappa: int, l: int) -> ProtocolTree:
    """Turn a protocol for ``f**l`` into one for ``(interlace_power(f, kappa))**l``.

    The row player first sends the index of its component tuple in
    ``ceil(l*log2(kappa))`` bits, most significant first; bits that every
    remaining row agrees on are not sent.  The players then follow ``P``
    through ``sigma`` and ``tau_u``.
    """
    if kappa < 1 or l < 1:
        raise DomainError(f"kappa and l must be >= 1, got {kappa}, {l}")
    F = direct_sum_power(f, l)
    if not protocol_verify(P, F).ok:
        raise PreconditionError("the given protocol does not compute f**l")
    maps = LiftMaps(f.rows, f.cols, kappa, l)
    check_cells(maps.lifted_rows, maps.lifted_cols, "lifted game")
    bits = announcement_bits(kappa, l)
    rows_by_index: dict[int, list[int]] = {}
    for u, xs in maps.row_classes().items():
        rows_by_index[maps.class_index(u)] = xs
    all_cols = list(range(maps.lifted_cols))

    def simulate(node: ProtocolTree, u: tuple[int, ...], rows: list[int], cols: list[int]) -> ProtocolTree:
        if isinstance(node, Leaf):
            return node
        left = set(node.left)
        if node.player == "row":
            a = [x for x in rows if maps.sigma(x) in left]
            b = [x for x in rows if maps.sigma(x) not in left]
            return Internal("row", tuple(a), (simulate(node.children[0], u, a, cols), simulate(node.children[1], u, b, cols)))
        a = [y for y in cols if maps.tau(u, y) in left]
        b = [y for y in cols if maps.tau(u, y) not in left]
        return Internal("col", tuple(a), (simulate(node.children[0], u, rows, a), simulate(node.children[1], u, rows, b)))

    def announce(depth: int, indices: list[int]) -> ProtocolTree:
        if depth == bits:
            (U,) = indices
            u = tuple((U // kappa**i) % kappa for i in range(l))
            return simulate(P, u, rows_by_index[U], all_cols)
        shift = bits - depth - 1
        zero = [U for U in indices if not (U >> shift) & 1]
        one = [U for U in indices if (U >> shift) & 1]
        if not one:
            return announce(depth + 1, zero)
        if not zero:
            return announce(depth + 1, one)
        left_rows = tuple(sorted(x for U in zero for x in rows_by_index[U]))
        return Internal("row", left_rows, (announce(depth + 1, zero), announce(depth + 1, one)))

    return announce(0, list(range(kappa**l)))


def verify_one_round_upper(f: GameMatrix, kappa: int, l: int, policy: SolverPolicy | None = None) -> LemmaReport:
    """Lift an optimal protocol for ``f**l`` and check it on the interlaced direct sum.

    When the lifted game is itself within the exact-solver policy, its exact
    complexity is also compared with ``D(f**l) + ceil(l*log2(kappa))``.
    """
    policy = policy or DEFAULT_POLICY
    start = time.perf_counter()
    F = direct_sum_power(f, l)
    base = solve_exact(F, policy=policy)
    lifted = lift_protocol(base.tree, f, kappa, l)
    G = direct_sum_power(interlace_power(f, kappa), l)
    bits = announcement_bits(kappa, l)
    check = protocol_verify(lifted, G)
    values = {"D_base": base.depth, "bits": bits, "lifted_cost": check.cost, "lifted_shape": [G.rows, G.cols]}
    violations = []
    instance = {"kappa": kappa, "l": l}
    if not check.ok:
        violations.append({"instance": {**instance, "check": "lifted protocol computes the game"}, "lhs": check.mismatches, "rhs": 0})
    if check.cost != base.depth + bits:
        violations.append({"instance": {**instance, "check": "lifted cost"}, "lhs": check.cost, "rhs": base.depth + bits})
    instances = 2
    if policy.admits(G.rows, G.cols):
        exact = solve_exact(G, policy=policy).depth
        values["D_lifted"] = exact
        instances += 1
        if exact > base.depth + bits:
            violations.append({"instance": {**instance, "check": "exact upper bound"}, "lhs": exact, "rhs": base.depth + bits})
    grid = {"f": f.to_dict(), "kappa": kappa, "l": l}
    return LemmaReport("one-round-upper", grid, instances, violations, 0, [], time.perf_counter() - start, values)


def verify_transpose_ds(f: GameMatrix, l: int, policy: SolverPolicy | None = None) -> LemmaReport:
    """``D(f**l) == D(transpose(f)**l)``."""
    start = time.perf_counter()
    a = solve_exact(direct_sum_power(f, l), policy=policy).depth
    b = solve_exact(direct_sum_power(transpose(f), l), policy=policy).depth
    violations = [] if a == b else [{"instance": {"l": l}, "lhs": a, "rhs": b}]
    values = {"D": a, "D_transposed": b}
    return LemmaReport("transpose-direct-sum", {"f": f.to_dict(), "l": l}, 1, violations, 0, [], time.perf_counter() - start, values)
