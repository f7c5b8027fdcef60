"""Independent reference implementations used to cross-check the package.

Nothing here imports ccgame; everything works on plain nested lists so a bug
in the package cannot leak into its own oracle.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

import sympy


def interlace_lsd(a: list[list[int]], p: int) -> list[list[int]]:
    """Component g reads digit g of the column index, least significant first."""
    m, n = len(a), len(a[0])
    return [[a[i % m][(j // n ** (i // m)) % n] for j in range(n**p)] for i in range(m * p)]


def interlace_msb(a: list[list[int]], p: int) -> list[list[int]]:
    """Component g reads digit p-1-g: the layout of the published displays."""
    m, n = len(a), len(a[0])
    return [[a[i % m][(j // n ** (p - 1 - i // m)) % n] for j in range(n**p)] for i in range(m * p)]


def transpose(a):
    return [list(r) for r in zip(*a)]


def alternating(B: int, i: int) -> list[list[int]]:
    phi = [[1, 0]]
    for _ in range(i):
        phi = transpose(interlace_lsd(phi, B))
    return phi


def phi_dims_recursive(B: int, i: int) -> tuple[int, int]:
    r, c = 1, 2
    for _ in range(i):
        r, c = c**B, r * B
    return r, c


def direct_sum(f: list[list[int]], alphabet: int, l: int) -> list[list[int]]:
    """Tuples in mixed radix, component 0 least significant, by brute force."""
    m, n = len(f), len(f[0])
    out = []
    for xs in range(m**l):
        xd = [(xs // m**k) % m for k in range(l)]
        row = []
        for ys in range(n**l):
            yd = [(ys // n**k) % n for k in range(l)]
            row.append(sum(f[xd[k]][yd[k]] * alphabet**k for k in range(l)))
        out.append(row)
    return out


def rank(a) -> int:
    return sympy.Matrix(a).rank()


def leafcount_bound(a) -> int:
    values = sorted({v for row in a for v in row})
    total = sum(rank([[1 if v == w else 0 for v in row] for row in a]) for w in values)
    return (total - 1).bit_length()


def depth_at_most(a: list[list[int]], d: int) -> bool:
    """Whether some protocol of depth ``<= d`` computes ``a``; plain recursion, small ``d`` only."""
    rows = tuple(range(len(a)))
    cols = tuple(range(len(a[0])))

    @lru_cache(maxsize=None)
    def ok(R: tuple, C: tuple, d: int) -> bool:
        vals = {a[r][c] for r in R for c in C}
        if len(vals) <= 1:
            return True
        if d == 0:
            return False
        if d == 1:
            # one bit: both halves monochromatic, so each row (or each column) is constant
            rows_const = all(len({a[r][c] for c in C}) == 1 for r in R)
            cols_const = all(len({a[r][c] for r in R}) == 1 for c in C)
            return len(vals) == 2 and (rows_const or cols_const)
        for side in (R, C):
            first, rest = side[0], side[1:]
            for k in range(len(rest) + 1):
                for extra in combinations(rest, k):
                    left = (first,) + extra
                    if len(left) == len(side):
                        continue
                    right = tuple(x for x in side if x not in left)
                    if side is R:
                        if ok(left, C, d - 1) and ok(right, C, d - 1):
                            return True
                    elif ok(R, left, d - 1) and ok(R, right, d - 1):
                        return True
        return False

    return ok(rows, cols, d)


def exact_depth(a, cap: int = 6) -> int:
    for d in range(cap + 1):
        if depth_at_most(a, d):
            return d
    raise ValueError("depth above cap")


def brute_subgame(P, Q) -> bool:
    """Try every row and column injection."""
    mp, np_ = len(P), len(P[0])
    mq, nq = len(Q), len(Q[0])
    if mp > mq or np_ > nq:
        return False
    for rows in permutations(range(mq), mp):
        for cols in permutations(range(nq), np_):
            if all(P[i][j] == Q[rows[i]][cols[j]] for i in range(mp) for j in range(np_)):
                return True
    return False


def digits_of(c: int, n: int, p: int) -> list[int]:
    """Least significant first."""
    return [(c // n**g) % n for g in range(p)]


def q_projection(R, C, Q, m: int, n: int, p: int):
    Q = sorted(Q)
    S = sorted(m * k + r for k, q in enumerate(Q) for r in range(m) if m * q + r in set(R))
    D = sorted({sum(digits_of(c, n, p)[q] * n**k for k, q in enumerate(Q)) for c in C})
    return S, D


def bracket_members(a, p: int, x: Fraction, y: Fraction):
    """All extractions of the interlaced power by filtering every row subset."""
    m, n = len(a), len(a[0])
    big = interlace_lsd(a, p)
    T = math.ceil(m * x)
    c = math.ceil(n**p * y)
    out = []
    for R in combinations(range(m * p), T * p):
        if any(sum(1 for r in R if r // m == g) != T for g in range(p)):
            continue
        for C in combinations(range(n**p), c):
            out.append([[big[r][j] for j in C] for r in R])
    return out


def all_boolean(rows: int, cols: int):
    for bits in product((0, 1), repeat=rows * cols):
        yield [list(bits[i * cols:(i + 1) * cols]) for i in range(rows)]


def run_protocol(tree: dict, x: int, y: int) -> tuple[int, int]:
    """Follow a protocol JSON tree on input ``(x, y)``; returns (leaf value, bits used)."""
    bits = 0
    node = tree
    while node["node"] == "internal":
        held = x if node["player"] == "row" else y
        node = node["children"][0 if held in node["left"] else 1]
        bits += 1
    return node["value"], bits


def protocol_computes(tree: dict, a) -> tuple[bool, int]:
    """Whether the tree outputs ``a[x][y]`` everywhere, and the most bits any input used."""
    worst = 0
    for x, row in enumerate(a):
        for y, v in enumerate(row):
            got, bits = run_protocol(tree, x, y)
            if got != v:
                return False, bits
            worst = max(worst, bits)
    return True, worst
