"""Regenerate tests/golden/*.json from the slow oracles in tests/oracles.py.

Run from the repository root:  python scripts/freeze_golden.py
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402

from instanton_strata.cli import dumps, run  # noqa: E402
from instanton_strata.signatures import BundleType, OrbifoldSignature  # noqa: E402

GOLDEN = ROOT / "tests" / "golden"

# (signature, charges, depth cap, weight cap, free-weight bound for the loose generator)
O_TREE_CASES = [
    (OrbifoldSignature(2, 0, "SU2", ((2, 1),)), (0, 1, 2), 2, 1, 2),
    (OrbifoldSignature(3, 1, "SO3", ((3, 1),)), (0, -4, -8), 2, 1, 2),
    (OrbifoldSignature(6, 1, "SU2", ((2, 1), (3, 1))), (2, 6), 2, 1, 1),
]


def write(name: str, doc) -> None:
    path = GOLDEN / name
    path.write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    print(f"wrote {path.relative_to(ROOT)}")


def main() -> None:
    GOLDEN.mkdir(exist_ok=True)

    write("tree_counts.json", {str(k): len(oracles.isomorphism_classes(k)) for k in range(1, 5)})

    table = []
    for k in range(1, 5):
        for m in range(10):
            for mp in range(10):
                if oracles.link_admissible(5, 2, k, m, mp):
                    table.append([k, m, mp])
    write("single_level_p5_q2.json", {"p": 5, "q": 2, "admissible": table})

    cots = {}
    for a in range(1, 13):
        for b in range(a):
            if oracles.gcd(a, b) != 1:
                continue
            for m in range(a):
                x = oracles.nearest_fraction(oracles.cot_sum_mp(a, b, m), 2 * a**3)
                cots[f"{a},{b},{m}"] = f"{x.numerator}/{x.denominator}"
    write("cot_sums.json", cots)

    cases = []
    for sig, charges, depth, wcap, bound in O_TREE_CASES:
        for c in charges:
            for ws in __import__("itertools").product(*(range(a) for a in sig.orders)):
                b = BundleType(c, ws)
                n = len(oracles.o_trees_generate_and_filter(sig, b, depth, wcap, bound))
                cases.append({"signature": sig.to_dict(), "bundle": b.to_dict(), "depth_cap": depth,
                              "weight_cap": wcap, "count": n})
    write("o_tree_counts.json", cases)

    for name, argv in [
        ("cli_dim_s4.json", ["dim-s4", "--p", "7", "--q", "3", "--k", "1", "--m", "2", "--m-prime", "4"]),
        ("cli_cot_sum.json", ["cot-sum", "--a", "3", "--b", "1", "--m", "1"]),
        ("cli_enumerate_trees_k2.json", ["enumerate-trees", "--k", "2"]),
        ("cli_cp2_demo.json", ["cp2-demo"]),
    ]:
        code, doc = run(argv)
        assert code == 0, (argv, doc)
        (GOLDEN / name).write_text(dumps(doc) + "\n")
        print(f"wrote tests/golden/{name}")


if __name__ == "__main__":
    main()
