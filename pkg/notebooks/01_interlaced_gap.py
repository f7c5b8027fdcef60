"""Exact complexity of interlaced powers of the two-column game, next to the rank bound.

Run with ``python3 notebooks/01_interlaced_gap.py``.
"""

from __future__ import annotations

from ccgame import PHI0, interlace_power, solve_exact
from ccgame.solver import lower_bound_leafcount, lower_bound_rank
from ccgame.rank import rational_rank


def main():
    print(f"{'p':>2} {'shape':>8} {'rank':>5} {'log-rank':>9} {'leafcount':>10} {'D':>3}")
    for p in range(1, 5):
        A = interlace_power(PHI0, p)
        d = solve_exact(A).depth
        print(f"{p:>2} {str(A.shape):>8} {rational_rank(A.cells):>5} {lower_bound_rank(A):>9} {lower_bound_leafcount(A):>10} {d:>3}")
    # from p = 2 on the exact value sits strictly above the log-rank bound


if __name__ == "__main__":
    main()
