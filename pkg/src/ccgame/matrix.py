"""Game matrices: the value table of a two-party function ``f: X x Y -> Z``.

Rows are the row player's inputs, columns the column player's inputs, and
cells hold symbols of the alphabet ``range(alphabet)``.  Matrices are
immutable; the backing numpy array is marked read-only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .config import check_cells
from .errors import DomainError, ShapeError


def _dtype_for(alphabet: int) -> np.dtype:
    if alphabet <= 1 << 8:
        return np.dtype(np.uint8)
    if alphabet <= 1 << 16:
        return np.dtype(np.uint16)
    if alphabet <= 1 << 32:
        return np.dtype(np.uint32)
    return np.dtype(np.uint64)


class GameMatrix:
    """An ``m x n`` matrix over the alphabet ``{0, ..., alphabet - 1}``."""

    __slots__ = ("_cells", "_alphabet", "__dict__")

    def __init__(self, cells: np.ndarray, alphabet: int):
        # Trusted constructor: callers go through new_matrix() or the
        # module-level builders, which validate.
        arr = np.array(cells, dtype=_dtype_for(alphabet), copy=True)
        arr.setflags(write=False)
        self._cells = arr
        self._alphabet = int(alphabet)

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def rows(self) -> int:
        return self._cells.shape[0]

    @property
    def cols(self) -> int:
        return self._cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def alphabet(self) -> int:
        return self._alphabet

    alphabet_size = alphabet

    def __getitem__(self, idx):
        return self._cells[idx]

    def value(self, i: int, j: int) -> int:
        return int(self._cells[i, j])

    def tolist(self) -> list[list[int]]:
        return self._cells.tolist()

    @property
    def T(self) -> "GameMatrix":
        return transpose(self)

    def is_constant(self) -> bool:
        return bool((self._cells == self._cells.flat[0]).all())

    def values(self) -> set[int]:
        return {int(v) for v in np.unique(self._cells)}

    @cached_property
    def _key(self) -> tuple:
        return (self.rows, self.cols, self._alphabet, self._cells.astype(np.uint64).tobytes())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GameMatrix):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        body = self._cells.tolist()
        if self.rows * self.cols > 64:
            return f"GameMatrix({self.rows}x{self.cols}, alphabet={self._alphabet})"
        return f"GameMatrix({body}, alphabet={self._alphabet})"

    # --- JSON -------------------------------------------------------------

    def to_dict(self) -> dict:
        return {"m": self.rows, "n": self.cols, "alphabet": self._alphabet, "rows": self.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "GameMatrix":
        try:
            rows = data["rows"]
            alphabet = data["alphabet"]
        except KeyError as exc:
            raise ShapeError(f"matrix JSON is missing key {exc}") from None
        M = new_matrix(rows, alphabet)
        if "m" in data and data["m"] != M.rows or "n" in data and data["n"] != M.cols:
            raise ShapeError(f"declared shape {data.get('m')}x{data.get('n')} does not match rows {M.rows}x{M.cols}")
        return M

    def dumps(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def loads(cls, text: str) -> "GameMatrix":
        return cls.from_dict(json.loads(text))


def new_matrix(cells: Sequence[Sequence[int]] | np.ndarray, alphabet_size: int = 2) -> GameMatrix:
    """Validate a rectangular value grid and wrap it as a :class:`GameMatrix`."""
    if alphabet_size < 1:
        raise DomainError(f"alphabet size must be >= 1, got {alphabet_size}")
    if isinstance(cells, np.ndarray):
        if cells.ndim != 2 or cells.shape[0] == 0 or cells.shape[1] == 0:
            raise ShapeError(f"expected a non-empty 2-d grid, got shape {cells.shape}")
        arr = cells
    else:
        grid = [list(r) for r in cells]
        if not grid or not grid[0]:
            raise ShapeError("grid must be non-empty")
        width = len(grid[0])
        for i, r in enumerate(grid):
            if len(r) != width:
                raise ShapeError(f"ragged grid: row {i} has {len(r)} cells, row 0 has {width}")
        arr = np.array(grid, dtype=np.int64)
    if arr.dtype.kind not in "iu":
        raise DomainError(f"cells must be integers, got dtype {arr.dtype}")
    lo, hi = int(arr.min()), int(arr.max())
    if lo < 0 or hi >= alphabet_size:
        raise DomainError(f"cell values must lie in [0, {alphabet_size}); found range [{lo}, {hi}]")
    return GameMatrix(arr, alphabet_size)


def transpose(M: GameMatrix) -> GameMatrix:
    return GameMatrix(M.cells.T, M.alphabet)


def load_matrix(path: str | Path) -> GameMatrix:
    return GameMatrix.loads(Path(path).read_text())


def save_matrix(M: GameMatrix, path: str | Path) -> None:
    Path(path).write_text(M.dumps() + "\n")


def identity(n: int) -> GameMatrix:
    return GameMatrix(np.eye(n, dtype=np.uint8), 2)


PHI0 = new_matrix([[1, 0]], 2)


# --- the alternating family's dimensions ------------------------------------


@dataclass(frozen=True)
class PhiDims:
    """Exact shape of the ``i``-th alternating game for interlace width ``B``."""

    B: int
    i: int
    rows: int
    cols: int

    @property
    def cells(self) -> int:
        return self.rows * self.cols

    def to_dict(self) -> dict:
        return {"B": self.B, "i": self.i, "rows": self.rows, "cols": self.cols}


def phi_dimensions(B: int, i: int) -> PhiDims:
    """Closed-form ``rows x cols`` of generation ``i`` (arbitrary precision).

    Even generations ``2j`` have ``B^((B^(j+1) - B)/(B - 1))`` rows and
    ``2^(B^j) * B^((B^j - 1)/(B - 1))`` columns; odd generations ``2j + 1``
    have ``2^(B^(j+1)) * B^((B^(j+1) - B)/(B - 1))`` rows and
    ``B^((B^(j+1) - 1)/(B - 1))`` columns.
    """
    if B < 2:
        raise DomainError(f"B must be >= 2, got {B}")
    if i < 0:
        raise DomainError(f"generation index must be >= 0, got {i}")
    j, odd = divmod(i, 2)
    if not odd:
        rows = B ** ((B ** (j + 1) - B) // (B - 1))
        cols = 2 ** (B**j) * B ** ((B**j - 1) // (B - 1))
    else:
        rows = 2 ** (B ** (j + 1)) * B ** ((B ** (j + 1) - B) // (B - 1))
        cols = B ** ((B ** (j + 1) - 1) // (B - 1))
    return PhiDims(B, i, rows, cols)


def pad_to_family(M: GameMatrix, n: int) -> GameMatrix:
    """Embed a boolean ``M`` in the top-left corner of a ``2^n x 2^n`` zero matrix."""
    if M.alphabet != 2:
        raise DomainError(f"padded families are boolean; got alphabet {M.alphabet}")
    if n < 0:
        raise DomainError(f"bit width must be >= 0, got {n}")
    side = 1 << n
    if M.rows > side or M.cols > side:
        raise DomainError(f"{M.rows}x{M.cols} matrix does not fit in {side}x{side} (n={n})")
    check_cells(side, side, "padded matrix")
    out = np.zeros((side, side), dtype=np.uint8)
    out[: M.rows, : M.cols] = M.cells
    return GameMatrix(out, 2)


def min_family_width(M: GameMatrix) -> int:
    """Smallest ``n`` with ``M`` fitting inside ``2^n x 2^n``."""
    side = max(M.rows, M.cols)
    return max(0, (side - 1).bit_length())
