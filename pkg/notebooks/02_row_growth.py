"""Growing the row fraction of a bracket can cost more than one bit per doubling.

For the 4x2 alternating game, the bracket with half of each component's rows
has complexity 1, while the full interlaced square needs 3.  Doubling the row
fraction once therefore adds two bits.  Growing the column fraction shows no
such jump on the same grid.
"""

from __future__ import annotations

from fractions import Fraction

from ccgame import BracketSpec, alternating_game, run_lemma_suite
from ccgame.bracket import bracket_argmin


def main():
    phi1 = alternating_game(2, 1)
    for x in (Fraction(1, 2), Fraction(1)):
        d, R, C = bracket_argmin(BracketSpec(phi1, 2, x, 1))
        print(f"x={x}: D={d}, attained at rows {R}, columns {C}")

    report = run_lemma_suite("subprotocol-bounds", "small")
    print(f"\nsmall grid: {report.instances} instances, {len(report.violations)} violations")
    for v in report.violations:
        print(f"  {v['instance']}: {v['lhs']} < {v['rhs']}")
    for note in report.notes:
        print(" ", note)


if __name__ == "__main__":
    main()
