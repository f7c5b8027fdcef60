"""How much padding a matrix to a square family member can cost.

Over every non-constant 3x3 boolean matrix, count how often the padded
matrix needs more bits than the original.
"""

from __future__ import annotations

from collections import Counter
from itertools import product

from ccgame import new_matrix, solve_exact
from ccgame.matrix import pad_to_family


def main():
    growth = Counter()
    for bits in product((0, 1), repeat=9):
        if len(set(bits)) == 1:
            continue
        M = new_matrix([bits[0:3], bits[3:6], bits[6:9]], 2)
        d = solve_exact(M).depth
        e = solve_exact(pad_to_family(M, 2)).depth
        growth[e - d] += 1
    for extra in sorted(growth):
        print(f"padding adds {extra} bit(s): {growth[extra]} matrices")


if __name__ == "__main__":
    main()
