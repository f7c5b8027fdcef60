"""Exact rank over the rationals by fraction-free (Bareiss) elimination."""

from __future__ import annotations

from typing import Sequence

import numpy as np


def rational_rank(rows: Sequence[Sequence[int]] | np.ndarray) -> int:
    a = [[int(v) for v in row] for row in (rows.tolist() if isinstance(rows, np.ndarray) else rows)]
    if not a or not a[0]:
        return 0
    m, n = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(n):
        pivot = next((r for r in range(rank, m) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[rank], a[pivot] = a[pivot], a[rank]
        pr = a[rank]
        for r in range(rank + 1, m):
            row = a[r]
            f = row[col]
            for c in range(col + 1, n):
                # exact division is the Bareiss invariant
                row[c] = (pr[col] * row[c] - f * pr[c]) // prev
            row[col] = 0
        prev = pr[col]
        rank += 1
        if rank == m:
            break
    return rank
