"""Process-wide limits: the materialization cell guard and the exact-solver size policy."""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass

from .errors import SizeError

DEFAULT_MAX_CELLS = 1 << 24
ENV_MAX_CELLS = "CCGAME_MAX_CELLS"

_override: int | None = None


def max_cells() -> int:
    """Current cell guard: explicit override, then ``CCGAME_MAX_CELLS``, then the default."""
    if _override is not None:
        return _override
    env = os.environ.get(ENV_MAX_CELLS)
    if env:
        value = int(env)
        if value < 1:
            raise ValueError(f"{ENV_MAX_CELLS} must be >= 1, got {value}")
        return value
    return DEFAULT_MAX_CELLS


def set_max_cells(value: int | None) -> None:
    global _override
    if value is not None and value < 1:
        raise ValueError("cell guard must be >= 1")
    _override = value


@contextlib.contextmanager
def cell_guard(value: int):
    """Temporarily replace the cell guard."""
    global _override
    previous = _override
    set_max_cells(value)
    try:
        yield
    finally:
        _override = previous


def check_cells(rows: int, cols: int, what: str = "matrix") -> None:
    cells = rows * cols
    limit = max_cells()
    if cells > limit:
        raise SizeError(
            f"{what} would have {rows}x{cols} = {cells} cells, above the guard of {limit}",
            rows=rows,
            cols=cols,
            cells=cells,
            limit=limit,
        )


@dataclass(frozen=True)
class SolverPolicy:
    """Envelope of matrices the exact solver accepts.

    A matrix qualifies when its shorter side is at most ``max_min_side`` and
    its longer side at most ``max_side``.
    """

    max_min_side: int = 4
    max_side: int = 16

    def admits(self, rows: int, cols: int) -> bool:
        return min(rows, cols) <= self.max_min_side and max(rows, cols) <= self.max_side

    def check(self, rows: int, cols: int) -> None:
        if not self.admits(rows, cols):
            raise SizeError(
                f"{rows}x{cols} matrix is outside the exact-solver policy "
                f"(min side <= {self.max_min_side}, max side <= {self.max_side})",
                rows=rows,
                cols=cols,
            )


DEFAULT_POLICY = SolverPolicy()
# Lemma suites solve every member of small bracket sets; their grids need a wider envelope.
SUITE_POLICY = SolverPolicy(max_min_side=8, max_side=32)
