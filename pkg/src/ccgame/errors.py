"""Exception hierarchy shared by every module."""

from __future__ import annotations


class CCGameError(Exception):
    """Base class for all errors raised by ccgame."""


class ShapeError(CCGameError, ValueError):
    """A value grid is empty or ragged."""


class DomainError(CCGameError, ValueError):
    """An argument lies outside the domain of an operation."""


class PreconditionError(CCGameError, ValueError):
    """A documented precondition of a construction does not hold."""


class StructureError(CCGameError, ValueError):
    """A protocol tree is malformed for the matrix it is checked against."""


class UsageError(CCGameError, ValueError):
    """Unknown lemma id, grid preset, or similar caller mistake."""


class SizeError(CCGameError):
    """A construction or search would exceed the configured size limits.

    ``info`` carries whatever exact sizes the caller may want to report
    (cell counts, member counts, or a :class:`~ccgame.matrix.PhiDims`).
    """

    def __init__(self, message: str, **info):
        super().__init__(message)
        self.info = info
