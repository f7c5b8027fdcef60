"""Interval-arithmetic checks of the numeric side conditions for large parameters.

Every real quantity is an :mod:`mpmath` interval, so a ``<=`` claim passes only
when the upper end of the left side is below the lower end of the right side.
Integer ceilings of logarithms are computed exactly with ``bit_length``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import iv

from .errors import DomainError
from .lemmas import LemmaReport

DEFAULT_PREC = 128
PARALLEL = 178
SCALE = 1780000


@dataclass(frozen=True)
class NumericConstantsSpec:
    k: int = 10000
    a: int = 10
    s: int = 2
    B_factor: Fraction = field(default=Fraction(255, 256))
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        if self.s < 1:
            raise DomainError(f"s must be >= 1, got {self.s}")
        if self.k <= 3:
            raise DomainError(f"k must be > 3, got {self.k}")
        if self.a < 0:
            raise DomainError(f"a must be >= 0, got {self.a}")
        if self.prec < 80:
            raise DomainError(f"precision must be at least 80 bits, got {self.prec}")
        object.__setattr__(self, "B_factor", Fraction(self.B_factor))


def ceil_log2_power(base: int, exponent: int) -> int:
    """Exact ``ceil(exponent * log2(base))`` for integers ``base >= 1``."""
    return (base**exponent - 1).bit_length()


def _lo(x):
    return x.a


def _hi(x):
    return x.b


def _mid(x) -> float:
    return float(x.mid)


def verify_numeric_constants(spec: NumericConstantsSpec | None = None, h_max: int = 8) -> LemmaReport:
    spec = spec or NumericConstantsSpec()
    start = time.perf_counter()
    k, a, s = spec.k, spec.a, spec.s
    old = iv.prec
    iv.prec = spec.prec
    try:
        ka = iv.mpf(k + a)
        rho = iv.exp(iv.log(ka) / s)
        if not _lo(rho) > 2:
            raise DomainError(f"rho = (k+a)^(1/s) must exceed 2, got about {_mid(rho)}")
        ratio = ((rho - 1) / (rho - 2)) ** s
        two_a = iv.mpf(2) ** a
        lhs_a = (3 * two_a - 3) / (iv.mpf(2) ** (iv.mpf(13) / 8) * two_a - 4) * ratio
        bound_a = iv.mpf(spec.B_factor.numerator) / spec.B_factor.denominator
        inner_b = iv.mpf(3) / 4 * ratio - ka / iv.mpf(2) ** k
        if not _lo(inner_b) > 0:
            raise DomainError("the argument of the logarithm in check (b) is not positive")
        value_b = iv.log(inner_b) / iv.log(2)
        lhs_c = rho - 1
        rhs_c = iv.exp(iv.log(ka) * (iv.mpf(1) / s - iv.mpf(1) / (k - 3)))
        alpha = iv.mpf(2) ** (iv.mpf(a) - iv.mpf(3) / 8)

        checks: list[tuple[str, object, object, bool]] = []
        checks.append(("a", _mid(lhs_a), _mid(bound_a), bool(_hi(lhs_a) <= _lo(bound_a))))
        checks.append(("b", _mid(value_b), -1, bool(_lo(value_b) > -1)))
        checks.append(("c", _mid(lhs_c), _mid(rhs_c), bool(_hi(lhs_c) <= _lo(rhs_c))))

        c1 = ceil_log2_power(255, PARALLEL)
        checks.append(("d", c1 - PARALLEL * 8, -1, c1 - PARALLEL * 8 <= -1))

        scale = Fraction(SCALE)
        e_ok = all((scale - 1) * i <= (1 - 1 / scale) * PARALLEL * (10000 * i) for i in range(1, 101))
        checks.append(("e", "i = 1..100", "", e_ok))

        violations = []
        for name, lhs, rhs, ok in checks:
            if not ok:
                violations.append({"instance": {"check": name}, "lhs": lhs, "rhs": rhs})

        # the chain that extends the h=1 step to larger h
        chain = []
        for h in range(1, h_max + 1):
            ch = ceil_log2_power(255, PARALLEL * h)
            distribute = ch <= h * c1
            step = ch - PARALLEL * h * 8 <= -h
            chain.append({"h": h, "ceil": ch, "h_times_ceil": h * c1, "distributes": distribute, "step": step})
            if not (distribute and step):
                violations.append({"instance": {"check": "h-chain", "h": h}, "lhs": ch, "rhs": h * c1})

        values = {
            "rho": _mid(rho),
            "alpha": _mid(alpha),
            "x": str(Fraction(1, 2**a)),
            "a_lhs": _mid(lhs_a),
            "a_bound": _mid(bound_a),
            "b_value": _mid(value_b),
            "c_lhs": _mid(lhs_c),
            "c_rhs": _mid(rhs_c),
            "d_ceil": c1,
            "d_value": c1 - PARALLEL * 8,
            "checks": {name: ok for name, _, _, ok in checks},
            "h_chain": chain,
        }
    finally:
        iv.prec = old
    grid = {"k": k, "a": a, "s": s, "B_factor": str(spec.B_factor), "prec": spec.prec, "h_max": h_max}
    notes = ["intervals at %d bits; real comparisons use interval endpoints" % spec.prec]
    if not all(step["distributes"] for step in chain):
        notes.append("the ceiling does not distribute over h for some h")
    return LemmaReport("numeric-constants", grid, len(checks) + len(chain), violations, 0, notes, time.perf_counter() - start, values)
