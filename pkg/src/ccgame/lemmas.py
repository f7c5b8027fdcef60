"""Desk-scale checkers for the inequalities between bracket-set complexities.

Each checker walks a named parameter grid, evaluates both sides of one
inequality with exact set complexities (full enumeration, exact solving) and
records every instance where it fails.  Grids are presets chosen so that
every bracket involved is small enough to enumerate completely.
"""

from __future__ import annotations

import json
import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Iterator

from .bracket import (
    RationalPower,
    as_fraction,
    bracket_selections,
    ceil_times,
    complexity_by_counts,
    fmt,
    normalize,
    power,
    BracketSpec,
)
from .config import SUITE_POLICY
from .errors import PreconditionError, UsageError
from .interlace import alternating_game, interlace_power
from .matrix import PHI0, GameMatrix, identity, new_matrix, transpose
from .projection import (
    Selection,
    balance_selection,
    extract,
    is_equipartitioned,
    max_projection,
    split_projection,
)
from .solver import solve_exact
from .subgame import is_subgame, set_is_subgame, verify_witness

LEMMA_IDS = (
    "monotonicity",
    "subprotocol-bounds",
    "extended-product",
    "extended-max",
    "extended-balancing",
    "transpose-bracket",
    "old-partition",
    "partition",
    "rank-claim",
    "subgame-easier",
)


def named_matrix(name: str) -> GameMatrix:
    """Matrices the grids refer to by name."""
    table = {
        "phi0": lambda: PHI0,
        "I2": lambda: identity(2),
        "phi1_B2": lambda: alternating_game(2, 1),
        "phi0^2": lambda: interlace_power(PHI0, 2),
        "phi0^3": lambda: interlace_power(PHI0, 3),
    }
    if name not in table:
        raise UsageError(f"unknown matrix name {name!r}; known: {sorted(table)}")
    return table[name]()


@dataclass
class LemmaReport:
    lemma: str
    grid: dict
    instances: int
    violations: list[dict]
    seed: int
    notes: list[str] = field(default_factory=list)
    wall_time: float = 0.0
    values: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return "pass" if not self.violations else "fail"

    def to_dict(self) -> dict:
        out = {
            "lemma": self.lemma,
            "grid": self.grid,
            "instances": self.instances,
            "violations": self.violations,
            "status": self.status,
            "seed": self.seed,
        }
        if self.notes:
            out["notes"] = self.notes
        if self.values:
            out["values"] = self.values
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, data: dict) -> "LemmaReport":
        return cls(
            data["lemma"], data["grid"], data["instances"], data["violations"], data["seed"],
            data.get("notes", []), values=data.get("values", {}),
        )


def _j(v):
    """JSON-friendly rendering of fractions and powers."""
    if isinstance(v, (Fraction, RationalPower)):
        return fmt(v)
    return v


def _D(M: GameMatrix, p: int, x, y) -> int:
    """Set complexity of ``<M, p, x, y>``; ``p = 0`` gives 0."""
    if p == 0:
        return 0
    spec = BracketSpec(M, p, x, y)
    return complexity_by_counts(M, p, spec.T, spec.ncols, policy=SUITE_POLICY)[0]


def _Dc(M: GameMatrix, p: int, x, c: int) -> int:
    """Set complexity with an explicit column count."""
    if p == 0:
        return 0
    T = math.ceil(M.rows * as_fraction(x))
    return complexity_by_counts(M, p, T, c, policy=SUITE_POLICY)[0]


class _Collector:
    def __init__(self):
        self.instances = 0
        self.violations: list[dict] = []
        self.notes: list[str] = []

    def check(self, instance: dict, lhs, rhs, holds: bool) -> None:
        self.instances += 1
        if not holds:
            self.violations.append({"instance": {k: _j(v) for k, v in instance.items()}, "lhs": _j(lhs), "rhs": _j(rhs)})


F = Fraction

# --- grids ------------------------------------------------------------------

GRIDS: dict[str, dict[str, dict]] = {
    "monotonicity": {
        "tiny": {"M": ["phi0"], "p": [1, 2], "x": ["1"], "y": ["1/2", "1"]},
        "small": {"M": ["phi0", "I2"], "p": [1, 2, 3], "x": ["1/2", "1"], "y": ["1/4", "1/2", "3/4", "1"]},
    },
    "subprotocol-bounds": {
        "tiny": {"M": ["phi0"], "p": [1, 2], "x": ["1"], "y": ["1/4", "1"], "k": [0, 1], "m": [0, 1]},
        "small": {"M": ["phi0", "phi1_B2"], "p": [1, 2], "x": ["1/4", "1/2", "1"], "y": ["1/4", "1/2", "1"], "k": [0, 1, 2], "m": [0, 1, 2]},
    },
    "extended-product": {
        "tiny": {"cases": [["phi0", 2, "1", "3/4"]]},
        "small": {
            "cases": [
                ["phi0", 2, "1", "1/2"], ["phi0", 2, "1", "3/4"], ["phi0", 2, "1", "1"],
                ["phi0", 3, "1", "1/2"], ["phi0", 3, "1", "3/4"], ["phi0", 3, "1", "1"],
                ["I2", 2, "1/2", "1/2"], ["I2", 2, "1/2", "1"], ["I2", 2, "1", "1/2"], ["I2", 2, "1", "3/4"],
                ["I2", 2, "1", "1"], ["I2", 3, "1/2", "1/2"], ["I2", 3, "1/2", "3/4"], ["I2", 3, "1/2", "1"],
            ]
        },
    },
    "extended-max": {
        "tiny": {"M": ["phi0"], "p": [2], "x": ["1"], "y": ["1/2", "1"]},
        "small": {"M": ["phi0", "I2"], "p": [2, 3], "x": ["1/2", "1"], "y": ["1/4", "1/2", "3/4", "1"]},
    },
    "extended-balancing": {
        "tiny": {"cases": [["I2", 1, "1/2", "2", "1"]]},
        "small": {
            "cases": [
                [M, p, x, a, y]
                for M, x, alphas, ps in (
                    ("I2", "1/2", ("3/2", "2"), (1, 2, 3)),
                    ("phi1_B2", "1/4", ("3/2", "2", "4"), (1, 2)),
                    ("phi1_B2", "1/2", ("3/2", "2"), (1, 2)),
                )
                for a in alphas
                for p in ps
                for y in ("1/2", "1")
            ]
        },
    },
    "transpose-bracket": {
        "tiny": {"M": ["I2"], "x": ["1/2", "1"], "y": ["1/2", "1"]},
        "small": {"M": ["phi0^2", "I2", "phi1_B2", "phi0^3"], "x": ["1/4", "1/2", "3/4", "1"], "y": ["1/4", "1/2", "3/4", "1"]},
    },
    "old-partition": {
        "tiny": {"M": ["I2"], "p": [1], "delta": [0], "x": ["1/2"], "y": ["1"]},
        "small": {"M": ["phi0", "I2"], "p": [1], "delta": [0, 1], "x": ["1/2"], "y": ["1/2", "3/4", "1"]},
    },
    "partition": {
        "tiny": {"M": ["I2"], "p": [1], "delta": [0], "x": ["1/2"], "y": ["1"], "tau": ["0", "1"]},
        "small": {"M": ["phi0", "I2"], "p": [1], "delta": [0, 1], "x": ["1/2"], "y": ["1/2", "3/4", "1"], "tau": ["0", "1/3", "1/2", "1"]},
    },
    "rank-claim": {
        "tiny": {"p": [2], "x": ["1"], "y": ["1/2", "1"]},
        "small": {"p": [2, 3], "x": ["1"], "y": ["1/2", "3/4", "1"]},
    },
    "subgame-easier": {
        "tiny": {"pairs": 40, "sets": 10, "max_side": 3, "alphabet": [2]},
        "small": {"pairs": 300, "sets": 60, "max_side": 4, "alphabet": [2, 3]},
    },
}


# --- checkers ------------------------------------------------------------------


def _monotonicity(grid: dict, seed: int, out: _Collector) -> None:
    for name in grid["M"]:
        M = named_matrix(name)
        points = list(product(grid["p"], map(F, grid["x"]), map(F, grid["y"])))
        D = {pt: _D(M, *pt) for pt in points}
        for big in points:
            for small in points:
                if small == big or not all(s <= b for s, b in zip(small, big)):
                    continue
                inst = {"M": name, "p'": small[0], "x'": small[1], "y'": small[2], "p": big[0], "x": big[1], "y": big[2]}
                out.check(inst, D[small], D[big], D[small] <= D[big])


def _subprotocol_bounds(grid: dict, seed: int, out: _Collector) -> None:
    for name in grid["M"]:
        M = named_matrix(name)
        for p, x, y, k, m in product(grid["p"], map(F, grid["x"]), map(F, grid["y"]), grid["k"], grid["m"]):
            x2, y2 = min(F(1), 2**k * x), min(F(1), 2**m * y)
            lhs = k + m + _D(M, p, x, y)
            rhs = _D(M, p, x2, y2)
            out.check({"M": name, "p": p, "x": x, "y": y, "k": k, "m": m}, lhs, rhs, lhs >= rhs)
    rows_only = sum(1 for v in out.violations if v["instance"]["m"] == 0)
    cols_only = sum(1 for v in out.violations if v["instance"]["k"] == 0)
    out.notes.append(f"violations with only row growth (m=0): {rows_only}; with only column growth (k=0): {cols_only}")


def _row_bipartitions(R: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Ordered partitions ``(R1, R2)`` of ``R`` into two non-empty parts."""
    n = len(R)
    for mask in range(1, (1 << n) - 1):
        R1 = tuple(R[i] for i in range(n) if mask >> i & 1)
        R2 = tuple(R[i] for i in range(n) if not mask >> i & 1)
        yield R1, R2


def _extended_product(grid: dict, seed: int, out: _Collector) -> None:
    degenerate = 0
    for name, p, x, y in grid["cases"]:
        M = named_matrix(name)
        x, y = F(x), F(y)
        spec = BracketSpec(M, p, x, y)
        m, n, T = M.rows, M.cols, spec.T
        big = interlace_power(M, p)
        for R, C in bracket_selections(spec):
            for R1, R2 in _row_bipartitions(R):
                inst = {"M": name, "p": p, "x": x, "y": y, "R1": list(R1), "R2": list(R2), "C": list(C)}
                try:
                    part1, part2 = split_projection(M, p, R1, R2, C, T)
                except PreconditionError:
                    # one side keeps no component at all
                    degenerate += 1
                    continue
                y1 = F(len(part1.D), n**part1.ell)
                y2 = F(len(part2.D), n**part2.ell)
                ok = part1.ell + part2.ell == p and y1 * y2 >= y
                half = math.ceil(m * x / 2)
                for part, Ri in ((part1, R1), (part2, R2)):
                    ok = ok and is_equipartitioned(part.S, m, half, part.ell)
                    small = extract(interlace_power(M, part.ell), R=part.S, C=part.D)
                    ok = ok and verify_witness(small, extract(big, R=Ri, C=C), part.witness)
                out.check(inst, y1 * y2, y, ok)
    if degenerate:
        out.notes.append(f"{degenerate} row partitions leave one side without a component and are skipped")


def _extended_max(grid: dict, seed: int, out: _Collector) -> None:
    for name in grid["M"]:
        M = named_matrix(name)
        n = M.cols
        for p, x, y in product(grid["p"], map(F, grid["x"]), map(F, grid["y"])):
            spec = BracketSpec(M, p, x, y)
            big = interlace_power(M, p)
            lhs = _D(M, p, x, y)
            for ell in range(1, p + 1):
                yl = power(y, F(ell, p))
                need = ceil_times(n**ell, yl)
                rhs = _D(M, ell, x, yl)
                members_ok = True
                small_game = interlace_power(M, ell)
                for R, C in bracket_selections(spec):
                    res = max_projection(M, p, R, C, ell)
                    members_ok = members_ok and len(res.D) >= need and len(res.D) ** p >= len(C) ** ell
                    small = extract(small_game, R=res.S, C=res.D)
                    members_ok = members_ok and verify_witness(small, extract(big, R=R, C=C), res.witness)
                inst = {"M": name, "p": p, "x": x, "y": y, "ell": ell}
                out.check(inst, lhs, rhs, members_ok and lhs >= rhs)


def _extended_balancing(grid: dict, seed: int, out: _Collector) -> None:
    for name, p, x, alpha, y in grid["cases"]:
        M = named_matrix(name)
        m, n = M.shape
        x, alpha, y = F(x), F(alpha), F(y)
        if (m * x).denominator != 1 or not 0 < alpha * x <= 1 or x >= 1:
            raise UsageError(f"grid case needs integer m*x, alpha*x <= 1 and x < 1: {name, p, x, alpha, y}")
        p_small = math.ceil(p * (alpha - 1) * x / (1 - x))
        base = interlace_power(M, p)
        outer = BracketSpec(base, 1, alpha * x, y)
        lhs = _D(base, 1, alpha * x, y)
        rhs = _D(M, p_small, x, y)
        members_ok = True
        T = int(m * x)
        for R, C in bracket_selections(outer):
            res = balance_selection(M, p, R, C, T)
            members_ok = members_ok and res.ell >= p_small
            members_ok = members_ok and is_equipartitioned(res.S, m, T, res.ell)
            members_ok = members_ok and len(res.D) * n ** (p - res.ell) >= len(C)
            members_ok = members_ok and len(res.D) >= ceil_times(n**res.ell, y)
            small = extract(interlace_power(M, res.ell), R=res.S, C=res.D)
            members_ok = members_ok and verify_witness(small, extract(base, R=R, C=C), res.witness)
        inst = {"M": name, "p": p, "x": x, "alpha": alpha, "y": y, "p'": p_small}
        out.check(inst, lhs, rhs, members_ok and lhs >= rhs)


def _transpose_bracket(grid: dict, seed: int, out: _Collector) -> None:
    for name in grid["M"]:
        M = named_matrix(name)
        Mt = transpose(M)
        for x, y in product(map(F, grid["x"]), map(F, grid["y"])):
            lhs = _D(M, 1, x, y)
            rhs = _D(Mt, 1, y, x)
            out.check({"M": name, "x": x, "y": y}, lhs, rhs, lhs == rhs)


def _breakpoints(N1: int, N2: int, y: Fraction) -> list[Fraction]:
    """Values of ``t = y**a`` (``a`` in ``[0, 1]``) where ``ceil(N1*t)`` or ``ceil(N2*y/t)`` can change, plus midpoints."""
    if y == 1:
        return [F(1)]
    pts = {y, F(1)}
    pts.update(F(k, N1) for k in range(1, N1 + 1) if y <= F(k, N1) <= 1)
    pts.update(N2 * y / k for k in range(1, N2 + 1) if y <= N2 * y / k <= 1)
    pts = sorted(pts)
    mids = [(a + b) / 2 for a, b in zip(pts, pts[1:])]
    return sorted(set(pts) | set(mids))


def _split_min(M: GameMatrix, p1: int, p2: int, x, y: Fraction) -> int:
    """``min over a in [0,1]`` of ``max(D<M,p1,x,y^a>, D<M,p2,x,y^(1-a)>)``, exactly."""
    n = M.cols
    N1, N2 = n**p1, n**p2
    best = None
    seen = set()
    for t in _breakpoints(N1, N2, y):
        c1 = math.ceil(N1 * t)
        c2 = math.ceil(N2 * y / t)
        if (c1, c2) in seen:
            continue
        seen.add((c1, c2))
        v = max(_Dc(M, p1, x, c1), _Dc(M, p2, x, c2))
        best = v if best is None else min(best, v)
    return best


def _old_partition(grid: dict, seed: int, out: _Collector) -> None:
    vacuous = 0
    narrow_fail = 0
    checked = 0
    for name in grid["M"]:
        M = named_matrix(name)
        for p, delta, x, y in product(grid["p"], grid["delta"], map(F, grid["x"]), map(F, grid["y"])):
            inst = {"M": name, "p": p, "delta": delta, "x": x, "y": y}
            lhs = _D(M, 2 * p + delta, 2 * x, y)
            if lhs < 1:
                vacuous += 1
                continue
            col_first = _D(M, 2 * p + delta, 2 * x, y / 2)
            splits = {ell: _split_min(M, p + ell + delta, p - ell, x, y) for ell in range(p + 1)}
            wide = 1 + min(min(splits.values()), col_first)
            narrow = 1 + min(min(splits[ell] for ell in range(p)), col_first)
            checked += 1
            if lhs < narrow:
                narrow_fail += 1
            out.check(inst, lhs, wide, lhs >= wide)
    if vacuous:
        out.notes.append(f"{vacuous} grid points have set complexity 0 on the left and are vacuous")
    out.notes.append(
        f"min over ell in 0..p (wide range) checked; the narrow range 0..p-1 also holds on {checked - narrow_fail} of {checked} instances"
    )


def _partition(grid: dict, seed: int, out: _Collector) -> None:
    vacuous = 0
    for name in grid["M"]:
        M = named_matrix(name)
        for p, delta, x, y in product(grid["p"], grid["delta"], map(F, grid["x"]), map(F, grid["y"])):
            if _D(M, 2 * p, 2 * x, y / 4) < 1:
                vacuous += 1
                continue
            lhs = _D(M, 2 * p + delta, 2 * x, y)
            rhs = 1 + _D(M, p + delta, x, y)
            out.check({"M": name, "eq": "t0", "p": p, "delta": delta, "x": x, "y": y}, lhs, rhs, lhs >= rhs)
            if delta:
                continue
            lhs0 = _D(M, 2 * p, 2 * x, y)
            for tau in map(F, grid["tau"]):
                p2 = math.ceil(p * (1 - tau) + 1)
                a = _D(M, p, x, power(y, 1 / (1 + tau)))
                b = _D(M, p2, x, power(y, tau / (1 + tau)))
                rhs = 1 + min(a, b)
                out.check({"M": name, "eq": "d0", "p": p, "x": x, "y": y, "tau": tau}, lhs0, rhs, lhs0 >= rhs)
    if vacuous:
        out.notes.append(f"{vacuous} grid points fail the precondition D<M,2p,2x,y/4> >= 1 and are vacuous")


def rank_claim_bound(p: int, y) -> int:
    """``ceil(log2(p + log2 y))`` computed exactly, clamped at 0.

    It is the least ``e >= 0`` with ``y * 2**p <= 2**(2**e)``.
    """
    v = F(y) * 2**p
    e = 0
    while v > 2 ** (2**e):
        e += 1
    return e


def _rank_claim(grid: dict, seed: int, out: _Collector) -> None:
    for p, x, y in product(grid["p"], map(F, grid["x"]), map(F, grid["y"])):
        lhs = _D(PHI0, p, x, y)
        rhs = rank_claim_bound(p, y)
        out.check({"M": "phi0", "p": p, "x": x, "y": y}, lhs, rhs, lhs >= rhs)


def _random_matrix(rng: random.Random, rows: int, cols: int, alphabet: int) -> GameMatrix:
    return new_matrix([[rng.randrange(alphabet) for _ in range(cols)] for _ in range(rows)], alphabet)


def _random_subgame(rng: random.Random, Q: GameMatrix) -> GameMatrix:
    rows = rng.sample(range(Q.rows), rng.randint(1, Q.rows))
    cols = rng.sample(range(Q.cols), rng.randint(1, Q.cols))
    return GameMatrix(Q.cells[rows][:, cols], Q.alphabet)


def _subgame_easier(grid: dict, seed: int, out: _Collector) -> None:
    rng = random.Random(seed)
    side = grid["max_side"]
    found = 0
    for i in range(grid["pairs"]):
        a = rng.choice(grid["alphabet"])
        Q = _random_matrix(rng, rng.randint(1, side), rng.randint(1, side), a)
        # half the time a genuine subgame, otherwise an unrelated small matrix
        if rng.random() < 0.5:
            P = _random_subgame(rng, Q)
        else:
            P = _random_matrix(rng, rng.randint(1, Q.rows), rng.randint(1, Q.cols), a)
        w = is_subgame(P, Q)
        if w is None:
            continue
        found += 1
        dP, dQ = solve_exact(P).depth, solve_exact(Q).depth
        ok = verify_witness(P, Q, w) and dP <= dQ
        out.check({"pair": i, "P": P.tolist(), "Q": Q.tolist()}, dP, dQ, ok)
    for i in range(grid["sets"]):
        a = rng.choice(grid["alphabet"])
        big = [_random_matrix(rng, rng.randint(2, side), rng.randint(2, side), a) for _ in range(rng.randint(1, 3))]
        small = [_random_subgame(rng, Q) for Q in big]
        small += [_random_matrix(rng, 2, 2, a) for _ in range(rng.randint(0, 2))]
        if not set_is_subgame(small, big):
            raise AssertionError("sets built from subgames must satisfy set containment")
        dS = min(solve_exact(P).depth for P in small)
        dB = min(solve_exact(Q).depth for Q in big)
        out.check({"set": i, "small": [P.tolist() for P in small], "large": [Q.tolist() for Q in big]}, dS, dB, dS <= dB)
    out.notes.append(f"{found} of {grid['pairs']} random pairs were subgames")


CHECKERS: dict[str, Callable[[dict, int, _Collector], None]] = {
    "monotonicity": _monotonicity,
    "subprotocol-bounds": _subprotocol_bounds,
    "extended-product": _extended_product,
    "extended-max": _extended_max,
    "extended-balancing": _extended_balancing,
    "transpose-bracket": _transpose_bracket,
    "old-partition": _old_partition,
    "partition": _partition,
    "rank-claim": _rank_claim,
    "subgame-easier": _subgame_easier,
}


def grid_preset(lemma_id: str, preset: str) -> dict:
    if lemma_id not in GRIDS:
        raise UsageError(f"unknown lemma id {lemma_id!r}; known: {', '.join(LEMMA_IDS)}")
    presets = GRIDS[lemma_id]
    if preset not in presets:
        raise UsageError(f"unknown grid preset {preset!r} for {lemma_id}; known: {sorted(presets)}")
    return {"preset": preset, **presets[preset]}


def run_lemma_suite(lemma_id: str, grid: str | dict = "small", seed: int = 0) -> LemmaReport:
    """Evaluate one lemma on every instance of a grid (a preset name or an explicit dict)."""
    if lemma_id not in CHECKERS:
        raise UsageError(f"unknown lemma id {lemma_id!r}; known: {', '.join(LEMMA_IDS)}")
    params = grid_preset(lemma_id, grid) if isinstance(grid, str) else dict(grid)
    out = _Collector()
    start = time.perf_counter()
    CHECKERS[lemma_id](params, seed, out)
    elapsed = time.perf_counter() - start
    violations = sorted(out.violations, key=lambda v: json.dumps(v["instance"], sort_keys=True))
    return LemmaReport(lemma_id, params, out.instances, violations, seed, out.notes, elapsed)
