"""Subgame containment: is ``P`` obtainable from ``Q`` by selecting and rearranging rows and columns?"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .matrix import GameMatrix


@dataclass(frozen=True)
class SubgameWitness:
    """Row and column injections with ``P[i][j] == Q[rows[i]][cols[j]]``."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"rows": list(self.rows), "cols": list(self.cols)}

    @classmethod
    def from_dict(cls, data: dict) -> "SubgameWitness":
        return cls(tuple(data["rows"]), tuple(data["cols"]))


def verify_witness(P: GameMatrix, Q: GameMatrix, w: SubgameWitness) -> bool:
    if len(w.rows) != P.rows or len(w.cols) != P.cols:
        return False
    if len(set(w.rows)) != len(w.rows) or len(set(w.cols)) != len(w.cols):
        return False
    if any(not 0 <= r < Q.rows for r in w.rows) or any(not 0 <= c < Q.cols for c in w.cols):
        return False
    sub = Q.cells[list(w.rows)][:, list(w.cols)]
    return bool((sub == P.cells).all())


def _match_columns(cands: list[int], ncols: int) -> list[int] | None:
    """Injective choice ``j -> c`` with bit ``c`` set in ``cands[j]`` (augmenting paths)."""
    owner: dict[int, int] = {}

    def augment(j: int, seen: set[int]) -> bool:
        mask = cands[j]
        while mask:
            low = mask & -mask
            c = low.bit_length() - 1
            mask ^= low
            if c in seen:
                continue
            seen.add(c)
            if c not in owner or augment(owner[c], seen):
                owner[c] = j
                return True
        return False

    for j in range(len(cands)):
        if not augment(j, set()):
            return None
    assignment = [0] * len(cands)
    for c, j in owner.items():
        assignment[j] = c
    return assignment


def is_subgame(P: GameMatrix, Q: GameMatrix) -> SubgameWitness | None:
    """Complete search for a witness of ``P`` inside ``Q``; ``None`` if there is none."""
    if P.rows > Q.rows or P.cols > Q.cols:
        return None
    if not P.values() <= Q.values():
        return None

    qcells = Q.cells.tolist()
    pcells = P.cells.tolist()
    # colmask[r][v]: columns of Q where row r holds value v
    colmask = []
    for row in qcells:
        masks: dict[int, int] = {}
        for c, v in enumerate(row):
            masks[v] = masks.get(v, 0) | (1 << c)
        colmask.append(masks)

    # most constrained P rows first
    order = sorted(range(P.rows), key=lambda i: (-len(set(pcells[i])), i))
    full = (1 << Q.cols) - 1
    assigned = [0] * P.rows
    used = [False] * Q.rows
    qkeys = [tuple(r) for r in qcells]

    def search(depth: int, cands: list[int]) -> list[int] | None:
        if depth == len(order):
            return _match_columns(cands, Q.cols)
        i = order[depth]
        prow = pcells[i]
        tried: set[tuple] = set()
        for r in range(Q.rows):
            if used[r] or qkeys[r] in tried:
                continue
            tried.add(qkeys[r])
            masks = colmask[r]
            new = []
            for j, v in enumerate(prow):
                m = cands[j] & masks.get(v, 0)
                if not m:
                    break
                new.append(m)
            else:
                union = 0
                for m in new:
                    union |= m
                if union.bit_count() < P.cols:
                    continue
                used[r] = True
                assigned[i] = r
                cols = search(depth + 1, new)
                used[r] = False
                if cols is not None:
                    return cols
        return None

    cols = search(0, [full] * P.cols)
    if cols is None:
        return None
    return SubgameWitness(tuple(assigned), tuple(cols))


def set_is_subgame(smaller: Iterable[GameMatrix], larger: Iterable[GameMatrix]) -> bool:
    """Every matrix of ``larger`` contains some matrix of ``smaller`` as a subgame."""
    small = list(dict.fromkeys(smaller))
    for big in dict.fromkeys(larger):
        if not any(is_subgame(s, big) is not None for s in small):
            return False
    return True
