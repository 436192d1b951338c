"""Command-line front end.

Every command prints one JSON document (sorted keys, two-space indent) on
stdout.  Rationals are "num/den" strings, residues carry their modulus.
Exit codes: 0 ok, 2 validation error, 3 not realizable, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from importlib import resources
from typing import Any, Callable, Sequence

import jsonschema

from . import cp2
from .bubble_trees import TreeLimits, enumerate_trees
from .cyclotomic import cot_sum
from .equivariant_s4 import (
    S4Action,
    S4Triple,
    congruence_witnesses,
    find_chain,
    single_level_admissible,
)
from .errors import NotRealizable, PreconditionFailed, ResourceLimitExceeded, ValidationError
from .index import dim_invariant_moduli, dim_s4_invariant, dim_s4_invariant_balanced, invariant_index, s4_index
from .signatures import SCHEMA_VERSION, BundleType, Group, OrbifoldSignature, require_valid
from .strata import (
    OBubbleTree,
    enumerate_o_trees,
    gluing_consistency_check,
    single_edge_grid,
    stratum_report,
)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NOT_REALIZABLE = 3
EXIT_RESOURCE = 4


def rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def dumps(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=True)


def load_schema(name: str) -> dict[str, Any]:
    text = resources.files("instanton_strata").joinpath("schemas", name).read_text()
    return json.loads(text)


# argument helpers


def _sing(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected A:B, got {text!r}") from exc


def _int_list(text: str) -> tuple[int, ...]:
    if not text.strip():
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _add_signature_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="JSON document with 'signature' and 'bundle' (overrides flags)")
    p.add_argument("--alpha", type=int, default=1)
    p.add_argument("--b2-plus", type=int, default=0)
    p.add_argument("--group", choices=[g.value for g in Group], default="SU2")
    p.add_argument("--sing", type=_sing, action="append", default=[], metavar="A:B",
                   help="singular point with cone over L(A,B); repeat for several")
    p.add_argument("--charge", type=int, default=0, help="c2 (SU2) or p1 (SO3) upstairs")
    p.add_argument("--weights", type=_int_list, default=(), help="isotropy weights, comma-separated")


def _signature_and_bundle(args: argparse.Namespace) -> tuple[OrbifoldSignature, BundleType]:
    if args.input:
        try:
            with open(args.input) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read input document: {exc}") from exc
        try:
            jsonschema.validate(doc, load_schema("input.schema.json"))
        except jsonschema.ValidationError as exc:
            raise ValidationError(f"input document does not match the schema: {exc.message}") from exc
        sig = OrbifoldSignature.from_dict(doc["signature"])
        bundle = BundleType.from_dict(doc.get("bundle", {"charge": 0, "weights": [0] * len(sig.singularities)}))
    else:
        sig = OrbifoldSignature(args.alpha, args.b2_plus, Group(args.group), tuple(args.sing))
        weights = args.weights or (0,) * len(sig.singularities)
        bundle = BundleType(args.charge, weights)
    require_valid(sig)
    bundle = bundle.normalized(sig)
    require_valid(sig, bundle)
    return sig, bundle


def _triple_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--m-prime", type=int, required=True)
    p.add_argument("--literal-terminal", action="store_true",
                   help="chain terminal condition m'_n = m instead of m'_n = m'")


def _residue(x: int, n: int) -> dict[str, int]:
    return {"residue": x % n, "modulus": n}


# commands


def cmd_dim_orbifold(args: argparse.Namespace) -> dict[str, Any]:
    sig, bundle = _signature_and_bundle(args)
    index = invariant_index(sig, bundle)
    doc: dict[str, Any] = {"signature": sig.to_dict(), "bundle": bundle.to_dict(sig), "index": rational(index)}
    doc["dimension"] = dim_invariant_moduli(sig, bundle)
    return doc


def cmd_dim_s4(args: argparse.Namespace) -> dict[str, Any]:
    triple = S4Triple(args.k, args.m, args.m_prime)
    if args.balanced:
        dim = dim_s4_invariant_balanced(args.p, args.q, triple, literal_terminal=args.literal_terminal)
    else:
        dim = dim_s4_invariant(args.p, args.q, triple, literal_terminal=args.literal_terminal)
    return {"dimension": dim}


def cmd_austin_check(args: argparse.Namespace) -> dict[str, Any]:
    action = S4Action(args.p, args.q)
    triple = S4Triple(args.k, args.m, args.m_prime)
    n = action.modulus
    chain = find_chain(action, triple, literal_terminal=args.literal_terminal) if args.k >= 1 else None
    doc: dict[str, Any] = {
        "action": {"p": action.p, "q": action.q},
        "triple": {"k": args.k, "m": _residue(args.m, n), "m_prime": _residue(args.m_prime, n)},
        "witnesses": [{"a": _residue(a, n), "b": _residue(b, n)} for a, b in sorted(congruence_witnesses(action, triple))],
        "single_level_admissible": single_level_admissible(action, triple) if args.k >= 1 else None,
        "exists_invariant": chain is not None,
        "chain": None if chain is None else [
            {"k": c.k, "m": _residue(c.m, n), "m_prime": _residue(c.m_prime, n)} for c in chain
        ],
        "index": rational(s4_index(args.p, args.q, triple)),
    }
    return doc


def cmd_enumerate_trees(args: argparse.Namespace) -> dict[str, Any]:
    limits = TreeLimits(k_max=args.k_max, max_depth=args.max_depth, max_trees=args.max_trees)
    trees = [t.encode() for t in enumerate_trees(args.k, limits)]
    return {"k": args.k, "count": len(trees), "trees": trees}


def cmd_enumerate_o_trees(args: argparse.Namespace) -> dict[str, Any]:
    sig, bundle = _signature_and_bundle(args)
    trees = enumerate_o_trees(sig, bundle, args.depth_cap, args.weight_cap, max_trees=args.max_trees)
    records = [stratum_report(t).to_dict() for t in trees]
    return {
        "signature": sig.to_dict(),
        "bundle": bundle.to_dict(sig),
        "caps": {"depth": args.depth_cap, "weight": args.weight_cap},
        "count": len(trees),
        "trees": records,
    }


def cmd_gluing_check(args: argparse.Namespace) -> dict[str, Any]:
    if args.grid:
        trees: list[OBubbleTree] = list(single_edge_grid(args.a_max, args.k_max))
    else:
        sig, bundle = _signature_and_bundle(args)
        trees = [t for t in enumerate_o_trees(sig, bundle, 1, args.k_max) if t.edge_count() == 1]
    reports = [gluing_consistency_check(t).to_dict() for t in trees]
    cases: dict[str, dict[str, int]] = {}
    for r in reports:
        c = cases.setdefault(r["case"], {"checked": 0, "balanced": 0})
        c["checked"] += 1
        c["balanced"] += int(r["balanced"] and r["counts_balanced"])
    doc: dict[str, Any] = {"count": len(reports), "cases": cases, "all_balanced": all(
        r["balanced"] and r["counts_balanced"] for r in reports)}
    if not args.summary:
        doc["reports"] = reports
    return doc


def cmd_cp2_demo(args: argparse.Namespace) -> dict[str, Any]:
    if args.random:
        rng = random.Random(args.seed)
        ok = {"jump_line": 0, "intersection": 0, "orbit": 0, "round_trip": 0}
        for _ in range(args.random):
            alpha = cp2.random_alpha(rng)
            z = cp2.jump_line(alpha)
            pair = cp2.second_kind_pair(alpha)
            back = cp2.phi(pair)
            ok["jump_line"] += cp2.is_zero_vector(alpha.apply(z))
            ok["intersection"] += pair.intersection() == z
            ok["orbit"] += cp2.same_orbit(alpha, back)
            ok["round_trip"] += cp2.second_kind_pair(back) == pair
        return {"seed": args.seed, "samples": args.random, "passed": ok, "dim_checks": cp2.dim_checks()}
    rows = json.loads(args.alpha) if args.alpha else [[1, 0, 0], [0, 1, 0]]
    try:
        alpha = cp2.AlphaMatrix.exact([[Fraction(x) for x in r] for r in rows])
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"alpha must be a 2x3 array of rationals: {exc}") from exc
    doc = cp2.demo_trace(alpha)
    pair = cp2.second_kind_pair(alpha)
    doc["fixed_locus"] = {str(a): cp2.za_fixed(pair, a).value for a in (2, 3)}
    doc["dim_checks"] = cp2.dim_checks()
    return doc


def cmd_cot_sum(args: argparse.Namespace) -> dict[str, Any]:
    return {"value": rational(cot_sum(args.a, args.b, args.m))}


COMMANDS: dict[str, Callable[[argparse.Namespace], dict[str, Any]]] = {
    "dim-orbifold": cmd_dim_orbifold,
    "dim-s4": cmd_dim_s4,
    "austin-check": cmd_austin_check,
    "enumerate-trees": cmd_enumerate_trees,
    "enumerate-o-trees": cmd_enumerate_o_trees,
    "gluing-check": cmd_gluing_check,
    "cp2-demo": cmd_cp2_demo,
    "cot-sum": cmd_cot_sum,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="instanton-strata", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim-orbifold", help="invariant moduli dimension for a bundle type")
    _add_signature_args(p)

    p = sub.add_parser("dim-s4", help="dimension of Z_p-invariant instantons on S^4")
    _triple_args(p)
    p.add_argument("--balanced", action="store_true", help="divide out dilations")

    p = sub.add_parser("austin-check", help="congruence witnesses and chain search")
    _triple_args(p)

    p = sub.add_parser("enumerate-trees", help="bubble trees of total weight k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--k-max", type=int, default=8)
    p.add_argument("--max-depth", type=int, default=None)
    p.add_argument("--max-trees", type=int, default=500_000)

    p = sub.add_parser("enumerate-o-trees", help="O-bubble-trees with stratum reports")
    _add_signature_args(p)
    p.add_argument("--depth-cap", type=int, default=2)
    p.add_argument("--weight-cap", type=int, default=2)
    p.add_argument("--max-trees", type=int, default=100_000)

    p = sub.add_parser("gluing-check", help="single-edge gluing dimension check")
    _add_signature_args(p)
    p.add_argument("--grid", action="store_true", help="sweep the built-in grid instead")
    p.add_argument("--a-max", type=int, default=6)
    p.add_argument("--k-max", type=int, default=2)
    p.add_argument("--summary", action="store_true", help="omit per-tree reports")

    p = sub.add_parser("cp2-demo", help="jump lines and the phi correspondence on CP^2")
    p.add_argument("--alpha", help="2x3 JSON array of rationals, e.g. '[[1,0,0],[0,1,0]]'")
    p.add_argument("--random", type=int, default=0, help="run a seeded sweep of this many matrices")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("cot-sum", help="exact cotangent sum")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    return parser


def run(argv: Sequence[str] | None = None) -> tuple[int, dict[str, Any]]:
    """Parse and execute; returns (exit code, output document)."""
    args = build_parser().parse_args(argv)
    doc: dict[str, Any]
    try:
        doc = COMMANDS[args.command](args)
        code = EXIT_OK
    except (ValidationError, PreconditionFailed) as exc:
        code, doc = EXIT_VALIDATION, {"error": {"kind": "validation", "message": str(exc)}}
    except NotRealizable as exc:
        code, doc = EXIT_NOT_REALIZABLE, {"error": {"kind": "not_realizable", "message": str(exc)}}
    except ResourceLimitExceeded as exc:
        code, doc = EXIT_RESOURCE, {"error": {"kind": "resource_limit", "message": str(exc)}}
    doc["schema_version"] = SCHEMA_VERSION
    doc["command"] = args.command
    return code, doc


def main(argv: Sequence[str] | None = None) -> int:
    code, doc = run(argv)
    if code != EXIT_OK:
        print(f"instanton-strata: {doc['error']['message']}", file=sys.stderr)
    print(dumps(doc))
    return code


if __name__ == "__main__":
    sys.exit(main())
