"""The interlacing operator and the alternating game family.

``interlace_power(A, p)`` stacks ``p`` copies of ``A``'s rows.  Row ``i``
belongs to component ``g = i // m`` and reads the ``g``-th base-``n`` digit of
the column index, least significant digit first::

    b[i][j] = a[i % m][(j // n**g) % n]

Printed examples elsewhere often list component 0 on the most significant
digit instead.  The two layouts differ by a column permutation (reverse the
digits), which changes neither complexity nor subgame relations;
:func:`reverse_column_digits` converts between them.
"""

from __future__ import annotations

import numpy as np

from .config import check_cells
from .errors import DomainError, SizeError
from .matrix import PHI0, GameMatrix, phi_dimensions, transpose


def digit_columns(n: int, p: int, g: int) -> np.ndarray:
    """The ``g``-th base-``n`` digit of every column index in ``[0, n**p)``."""
    return (np.arange(n**p, dtype=np.int64) // n**g) % n


def interlace_power(M: GameMatrix, p: int) -> GameMatrix:
    if p < 1:
        raise DomainError(f"component count must be >= 1, got {p}")
    m, n = M.shape
    check_cells(m * p, n**p, f"interlaced power (p={p})")
    blocks = [M.cells[:, digit_columns(n, p, g)] for g in range(p)]
    return GameMatrix(np.vstack(blocks), M.alphabet)


def interlace_binary(f: GameMatrix, g: GameMatrix) -> GameMatrix:
    """Interlace two functions: ``f`` reads the slow column digit, ``g`` the fast one."""
    if f.alphabet != g.alphabet:
        raise DomainError(f"alphabet mismatch: {f.alphabet} vs {g.alphabet}")
    nf, ng = f.cols, g.cols
    check_cells(f.rows + g.rows, nf * ng, "binary interlace")
    j = np.arange(nf * ng)
    top = f.cells[:, j // ng]
    bottom = g.cells[:, j % ng]
    return GameMatrix(np.vstack([top, bottom]), f.alphabet)


def reverse_column_digits(M: GameMatrix, n: int, p: int) -> GameMatrix:
    """Permute columns of an ``n**p``-column matrix by reversing base-``n`` digit order."""
    if M.cols != n**p:
        raise DomainError(f"expected {n**p} columns, got {M.cols}")
    j = np.arange(n**p)
    perm = np.zeros_like(j)
    for g in range(p):
        perm += ((j // n**g) % n) * n ** (p - 1 - g)
    return GameMatrix(M.cells[:, perm], M.alphabet)


def alternating_game(B: int, i: int) -> GameMatrix:
    """``phi_0 = [1 0]`` and ``phi_{i+1} = transpose(interlace_power(phi_i, B))``."""
    dims = phi_dimensions(B, i)
    try:
        check_cells(dims.rows, dims.cols, f"alternating game (B={B}, i={i})")
    except SizeError as exc:
        exc.info["dims"] = dims
        raise
    phi = PHI0
    for _ in range(i):
        phi = transpose(interlace_power(phi, B))
    return phi
