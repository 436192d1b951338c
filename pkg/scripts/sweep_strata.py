"""Tabulate strata for a few orbifold signatures and summarise the gluing grid.

    python3 scripts/sweep_strata.py [--a-max 6] [--charge-max 3]

Prints one table per (signature, bundle type): every O-bubble-tree within
the default caps with its stratum dimension and flags.  Then runs the
single-edge gluing grid and counts outcomes per parity case.
"""

from __future__ import annotations

import argparse
from collections import Counter

from instanton_strata.errors import NotRealizable
from instanton_strata.signatures import BundleType, Group, OrbifoldSignature
from instanton_strata.strata import enumerate_o_trees, gluing_consistency_check, single_edge_grid, stratum_report

SIGNATURES = [
    OrbifoldSignature(2, 0, Group.SU2, ((2, 1),)),
    OrbifoldSignature(3, 1, Group.SO3, ((3, 1),)),
    OrbifoldSignature(6, 1, Group.SU2, ((2, 1), (3, 1))),
]


def strata_tables(charge_max: int) -> None:
    for sig in SIGNATURES:
        step = 1 if sig.group is Group.SU2 else -4
        for c in range(1, charge_max + 1):
            bundle = BundleType(c * step, tuple(0 for _ in sig.singularities))
            try:
                trees = enumerate_o_trees(sig, bundle)
            except NotRealizable as exc:
                print(f"{sig} charge={c * step}: {exc}")
                continue
            print(f"\n{sig} charge={c * step}: {len(trees)} trees")
            for t in trees:
                r = stratum_report(t)
                flags = "".join(f for f, on in (("x", r.excluded), ("e", r.extrapolated), ("!", r.error)) if on)
                print(f"  {r.tree:<40} stratum={r.stratum!s:>4} codim={r.codimension:>3} {flags}")


def gluing_summary(a_max: int) -> None:
    outcomes: Counter = Counter()
    for t in single_edge_grid(a_max=a_max):
        r = gluing_consistency_check(t)
        outcomes[(r.case, r.balanced, r.counts_balanced)] += 1
    print(f"\ngluing grid, a <= {a_max}")
    for (case, bal, counts), n in sorted(outcomes.items()):
        print(f"  {case:<14} balanced={bal!s:<5} counts={counts!s:<5} {n}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--a-max", type=int, default=6)
    parser.add_argument("--charge-max", type=int, default=2)
    args = parser.parse_args()
    strata_tables(args.charge_max)
    gluing_summary(args.a_max)


if __name__ == "__main__":
    main()
