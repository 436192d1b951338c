"""O-bubble-trees on M / Z_alpha, their charges and stratum dimensions.

An O-bubble-tree lives on the quotient X.  Its root carries a bundle type
O_0 (upstairs charge, weights m_i^0).  Two kinds of bubbles hang off it:

* ``FreeBubble``: an S^4 attached at a point with trivial stabiliser (a
  free point of X or of a singular bubble).  Its pullback to M consists of
  alpha copies.
* ``SingularBubble``: an S^4 / Z_{a_i} attached at the cone point of the
  i-th singularity, or at the north pole of the previous singular bubble.
  Links of one singularity form a chain whose weights match
  (m_in of the head = m_i^0, m_in of each link = m_out of its predecessor)
  and the last m_out is the weight m_i of the glued bundle.  Each link has
  alpha / a_i copies upstairs.

Dimensions are virtual (index) dimensions.  A ghost bubble's true moduli
differ by the dimension of its stabiliser (3 or 1); that correction is
reported separately and never folded into ``stratum_dimension``.

Canonical text encoding::

    otree    := charge ";" weights "{" free,* "}" "[" sing,* "]"
    weights  := residue ("," residue)*          (empty when no singularities)
    free     := bubble-tree encoding
    sing     := "S" index ":" m_in ">" m_out ":" weight [ "(" free,+ ")" ] [ "^" sing ]

For example ``0;0,1{1}[S1:0>2:1]``.
"""

from __future__ import annotations

import itertools
from math import gcd
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator

from .bubble_trees import BubbleTree, Key, _forests, encode_key, validate as validate_bubble_tree
from .equivariant_s4 import S4Action, S4Triple, exists_invariant
from .errors import NotRealizable, PreconditionFailed, ResourceLimitExceeded, ValidationError
from .index import invariant_index, s4_index
from .signatures import (
    BundleType,
    Check,
    Group,
    OrbifoldSignature,
    gluing_parameter_group,
    validate_bundle,
    validate_signature,
)


class Excluded:
    """Marker for the stratum whose background is the trivial connection."""

    _instance: Excluded | None = None

    def __new__(cls) -> Excluded:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EXCLUDED"


EXCLUDED = Excluded()


@dataclass(frozen=True)
class FreeBubble:
    weight: int
    children: tuple[FreeBubble, ...] = ()

    @classmethod
    def from_key(cls, key: Key) -> FreeBubble:
        return cls(key[0], tuple(cls.from_key(c) for c in key[1]))

    def key(self) -> Key:
        return (self.weight, tuple(sorted(c.key() for c in self.children)))

    def total(self) -> int:
        return self.weight + sum(c.total() for c in self.children)


@dataclass(frozen=True)
class SingularBubble:
    singularity: int
    m_in: int
    m_out: int
    weight: int
    children: tuple[FreeBubble, ...] = ()
    north: SingularBubble | None = None

    def links(self) -> list[SingularBubble]:
        out, cur = [], self
        while cur is not None:
            out.append(cur)
            cur = cur.north
        return out


@dataclass(frozen=True)
class OBubbleTree:
    base: OrbifoldSignature
    root_type: BundleType
    free_children: tuple[FreeBubble, ...] = ()
    singular_children: tuple[SingularBubble, ...] = ()

    @classmethod
    def from_bubble_tree(cls, base: OrbifoldSignature, tree: BubbleTree) -> OBubbleTree:
        """Manifold-style tree: every bubble free, root weight = root charge."""
        if base.singularities:
            raise ValidationError("from_bubble_tree needs a signature without singularities")
        key = tree.key()
        charge = key[0] if base.group is Group.SU2 else -4 * key[0]
        return cls(base, BundleType(charge), tuple(FreeBubble.from_key(c) for c in key[1]))

    def chain(self, i: int) -> SingularBubble | None:
        for s in self.singular_children:
            if s.singularity == i:
                return s
        return None

    def vertex_count(self) -> int:
        def free_count(f: FreeBubble) -> int:
            return 1 + sum(free_count(c) for c in f.children)

        n = 1 + sum(free_count(f) for f in self.free_children)
        for head in self.singular_children:
            for link in head.links():
                n += 1 + sum(free_count(f) for f in link.children)
        return n

    def edge_count(self) -> int:
        return self.vertex_count() - 1

    def encode(self) -> str:
        return encode_o_tree(self)


# encoding


def _encode_sing(s: SingularBubble) -> str:
    out = f"S{s.singularity}:{s.m_in}>{s.m_out}:{s.weight}"
    if s.children:
        out += "(" + ",".join(encode_key(k) for k in sorted(c.key() for c in s.children)) + ")"
    if s.north is not None:
        out += "^" + _encode_sing(s.north)
    return out


def encode_o_tree(t: OBubbleTree) -> str:
    ws = ",".join(str(m) for m in t.root_type.weights)
    free = ",".join(encode_key(k) for k in sorted(f.key() for f in t.free_children))
    sing = ",".join(_encode_sing(s) for s in sorted(t.singular_children, key=lambda s: s.singularity))
    return f"{t.root_type.charge};{ws}{{{free}}}[{sing}]"


# structure


def target_type(t: OBubbleTree) -> BundleType:
    """The bundle type O of the glued connection."""
    weights = list(t.root_type.weights)
    for head in t.singular_children:
        if 0 <= head.singularity < len(weights):
            weights[head.singularity] = head.links()[-1].m_out
    return BundleType(total_charge(t), tuple(weights), t.root_type.w2_fixed, t.root_type.w2_label)


def _bubble_load(t: OBubbleTree) -> int:
    """sum over bubbles of (number of upstairs copies) * weight."""
    alpha = t.base.alpha

    def free_load(f: FreeBubble) -> int:
        return alpha * f.total()

    load = sum(free_load(f) for f in t.free_children)
    for head in t.singular_children:
        a = t.base.singularities[head.singularity][0]
        for link in head.links():
            load += (alpha // a) * link.weight + sum(free_load(f) for f in link.children)
    return load


def total_charge(t: OBubbleTree) -> int:
    """Upstairs charge: c_2 for SU2, p_1 for SO3 (a unit bubble shifts p_1 by -4)."""
    load = _bubble_load(t)
    if t.base.group is Group.SU2:
        return t.root_type.charge + load
    return t.root_type.charge - 4 * load


def pullback(t: OBubbleTree) -> BubbleTree:
    """The Z_alpha-invariant bubble tree on M covering t (weights only)."""
    alpha = t.base.alpha
    weights: dict[int, int] = {}
    parent: dict[int, int] = {}

    def add(w: int, par: int | None) -> int:
        vid = len(weights)
        weights[vid] = w
        if par is not None:
            parent[vid] = par
        return vid

    def add_free(f: FreeBubble, par: int) -> None:
        v = add(f.weight, par)
        for c in f.children:
            add_free(c, v)

    def add_link(s: SingularBubble, par: int, a: int) -> None:
        v = add(s.weight, par)
        for f in s.children:
            for _ in range(a):
                add_free(f, v)
        if s.north is not None:
            add_link(s.north, v, a)

    root_weight = t.root_type.charge if t.base.group is Group.SU2 else 0
    root = add(max(root_weight, 0), None)
    for f in t.free_children:
        for _ in range(alpha):
            add_free(f, root)
    for head in t.singular_children:
        a = t.base.singularities[head.singularity][0]
        for _ in range(alpha // a):
            add_link(head, root, a)
    return BubbleTree(weights, parent, root)


def validate_o_tree(t: OBubbleTree, target: BundleType | None = None) -> Check:
    reasons = list(validate_signature(t.base).reasons)
    if reasons:
        return Check.from_reasons(reasons)
    sig = t.base
    root_check = validate_bundle(sig, t.root_type)
    reasons += [f"root type: {r}" for r in root_check.reasons]
    if not root_check:
        return Check.from_reasons(reasons)
    if sig.group is Group.SU2 and t.root_type.charge < 0:
        reasons.append(f"root charge c2={t.root_type.charge} is negative")
    if sig.group is Group.SO3 and t.root_type.charge > 0:
        reasons.append(f"root charge p1={t.root_type.charge} is positive")
    seen: set[int] = set()
    for head in t.singular_children:
        i = head.singularity
        if not 0 <= i < len(sig.singularities):
            reasons.append(f"singular chain refers to unknown singularity {i}")
            continue
        if i in seen:
            reasons.append(f"more than one singular chain at singularity {i}")
            continue
        seen.add(i)
        a = sig.singularities[i][0]
        expected = t.root_type.weights[i]
        total = 0
        for depth, link in enumerate(head.links()):
            if link.singularity != i:
                reasons.append(f"chain {i} link {depth} is labelled with singularity {link.singularity}")
            if not (0 <= link.m_in < a and 0 <= link.m_out < a):
                reasons.append(f"chain {i} link {depth}: weights must be residues mod {a}")
            if link.m_in != expected:
                reasons.append(
                    f"chain {i} link {depth}: m_in={link.m_in} does not match incoming weight {expected}"
                )
            if link.weight < 0:
                reasons.append(f"chain {i} link {depth}: negative weight")
            expected = link.m_out
            total += link.weight + sum(f.total() for f in link.children)
        if total <= 0:
            reasons.append(f"chain {i} carries no charge")
    for f in _all_free(t):
        if f.weight < 0:
            reasons.append("free bubble with negative weight")
    if not reasons:
        pb = validate_bubble_tree(pullback(t))
        reasons += [f"pullback: {r}" for r in pb.reasons]
        tgt = target_type(t)
        tgt_check = validate_bundle(sig, tgt)
        reasons += [f"glued type: {r}" for r in tgt_check.reasons]
        if target is not None:
            want = target.normalized(sig)
            if (tgt.charge, tgt.weights) != (want.charge, want.weights):
                reasons.append(f"glued type {tgt.charge};{tgt.weights} differs from target {want.charge};{want.weights}")
    return Check.from_reasons(reasons)


def _all_free(t: OBubbleTree) -> Iterator[FreeBubble]:
    stack = list(t.free_children)
    for head in t.singular_children:
        for link in head.links():
            stack.extend(link.children)
    while stack:
        f = stack.pop()
        yield f
        stack.extend(f.children)


def is_trivial_background(t: OBubbleTree) -> bool:
    return t.root_type.charge == 0 and all(m == 0 for m in t.root_type.weights)


def contract_root_edges(t: OBubbleTree) -> OBubbleTree:
    """Merge every child of the root into the root.

    Grandchildren move up: children of free bubbles and of singular heads
    become free children of the root, and the next link of each chain
    becomes the new head with the root weight updated to the old m_out.
    """
    sig = t.base
    load = 0
    free: list[FreeBubble] = []
    heads: list[SingularBubble] = []
    weights = list(t.root_type.weights)
    for f in t.free_children:
        load += sig.alpha * f.weight
        free.extend(f.children)
    for head in t.singular_children:
        a = sig.singularities[head.singularity][0]
        load += (sig.alpha // a) * head.weight
        free.extend(head.children)
        weights[head.singularity] = head.m_out
        if head.north is not None:
            heads.append(head.north)
    charge = t.root_type.charge + (load if sig.group is Group.SU2 else -4 * load)
    root = BundleType(charge, tuple(weights), t.root_type.w2_fixed, t.root_type.w2_label)
    return OBubbleTree(sig, root, tuple(free), tuple(heads))


# dimensions


def free_balanced_dimension(f: FreeBubble) -> int:
    """Balanced bubble-tree instantons on an S^4 bubble (translations and dilations removed)."""
    return 8 * f.weight - 8 + sum(4 + free_balanced_dimension(c) for c in f.children)


def _lift_with_chain(a: int, b: int, link: SingularBubble) -> S4Triple | None:
    action = S4Action(a, b)
    for m in (link.m_in, link.m_in + a):
        for mp in (link.m_out, link.m_out + a):
            tr = S4Triple(link.weight, m, mp)
            if exists_invariant(action, tr):
                return tr
    return None


def singular_link_index(a: int, b: int, link: SingularBubble) -> Fraction:
    """Balanced invariant index of one singular bubble, children excluded."""
    return s4_index(a, b, S4Triple(link.weight, link.m_in, link.m_out)) - 1


def singular_balanced_dimension(
    sig: OrbifoldSignature, link: SingularBubble, *, check_existence: bool = True
) -> int:
    a, b = sig.singularities[link.singularity]
    if check_existence:
        if link.weight == 0:
            if link.m_in != link.m_out:
                raise PreconditionFailed(
                    f"ghost singular bubble cannot change the weight {link.m_in} -> {link.m_out}"
                )
        elif _lift_with_chain(a, b, link) is None:
            raise PreconditionFailed(
                f"no Z_{a}-invariant instantons of charge {link.weight} with weights {link.m_in}->{link.m_out}"
            )
    own = singular_link_index(a, b, link)
    if own.denominator != 1:
        raise NotRealizable(f"singular bubble {_encode_sing(link)} has index {own}")
    dim = own.numerator + sum(4 + free_balanced_dimension(f) for f in link.children)
    if link.north is not None:
        dim += singular_balanced_dimension(sig, link.north, check_existence=check_existence)
    return dim


def stratum_dimension(
    t: OBubbleTree, *, check_existence: bool = True, include_trivial: bool = False
) -> int | Excluded:
    """Virtual dimension of the stratum of bubble-tree instantons of shape t."""
    check = validate_o_tree(t)
    if not check:
        raise ValidationError("; ".join(check.reasons))
    if is_trivial_background(t) and not include_trivial:
        return EXCLUDED
    background = invariant_index(t.base, t.root_type)
    if background.denominator != 1:
        raise NotRealizable(f"background type has index {background}")
    dim = background.numerator
    dim += sum(4 + free_balanced_dimension(f) for f in t.free_children)
    for head in t.singular_children:
        dim += singular_balanced_dimension(t.base, head, check_existence=check_existence)
    return dim


def edge_fibre_dimensions(t: OBubbleTree) -> list[tuple[str, int]]:
    """(attachment, dim) per edge: invariant gluing parameters plus the scale."""
    group = t.base.group
    out: list[tuple[str, int]] = []

    def free_edges(f: FreeBubble) -> None:
        out.append(("free point", 4))
        for c in f.children:
            free_edges(c)

    for f in t.free_children:
        free_edges(f)
    for head in t.singular_children:
        a = t.base.singularities[head.singularity][0]
        incoming = t.root_type.weights[head.singularity]
        where = f"cone point of singularity {head.singularity}"
        for link in head.links():
            out.append((where, gluing_parameter_group(group, a, incoming).dimension + 1))
            for f in link.children:
                free_edges(f)
            incoming = link.m_out
            where = f"north pole (singularity {head.singularity})"
    return out


def ghost_stabiliser_dimension(t: OBubbleTree) -> int:
    """Sum of dim Gamma over ghost bubbles: 3 for trivial pole isotropy, else 1."""
    total = sum(3 for f in _all_free(t) if f.weight == 0)
    for head in t.singular_children:
        for link in head.links():
            if link.weight == 0:
                total += 3 if link.m_in == 0 and link.m_out == 0 else 1
    return total


def is_extrapolated(t: OBubbleTree) -> bool:
    """True when some singular chain has more than one link."""
    return any(head.north is not None for head in t.singular_children)


@dataclass(frozen=True)
class StratumReport:
    tree: str
    stratum: int | None
    codimension: int
    top: int | None
    ghost_correction: int
    excluded: bool
    extrapolated: bool
    balanced: bool | None
    error: str | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "tree": self.tree,
            "dims": {
                "stratum": self.stratum,
                "codimension": self.codimension,
                "top": self.top,
                "ghost_correction": self.ghost_correction,
            },
            "excluded": self.excluded,
            "extrapolated": self.extrapolated,
            "balanced": self.balanced,
            "error": self.error,
        }


def stratum_report(t: OBubbleTree, *, check_existence: bool = True) -> StratumReport:
    """Check dim(top stratum) = stratum dimension + sum of edge fibre dimensions."""
    codim = sum(d for _, d in edge_fibre_dimensions(t))
    common = dict(
        tree=encode_o_tree(t),
        codimension=codim,
        ghost_correction=ghost_stabiliser_dimension(t),
        extrapolated=is_extrapolated(t),
    )
    try:
        dim = stratum_dimension(t, check_existence=check_existence)
    except (NotRealizable, PreconditionFailed) as exc:
        return StratumReport(stratum=None, top=None, excluded=False, balanced=None, error=str(exc), **common)
    if dim is EXCLUDED:
        return StratumReport(stratum=None, top=None, excluded=True, balanced=None, **common)
    top = invariant_index(t.base, target_type(t))
    top_int = top.numerator if top.denominator == 1 else None
    return StratumReport(
        stratum=dim,
        top=top_int,
        excluded=False,
        balanced=top == dim + codim,
        **common,
    )


# single-edge gluing check


def _nonzero(m: int, a: int) -> int:
    return 1 if m % a else 0


@dataclass(frozen=True)
class GluingReport:
    tree: str
    case: str
    dim_background: Fraction
    dim_bubble: Fraction
    dim_position: int
    dim_gluing_group: int
    dim_top: Fraction
    n_background: int
    n_bubble: int
    n_top: int
    counts_balanced: bool
    balanced: bool
    integral: bool
    realizable: bool | None

    def to_dict(self) -> dict[str, Any]:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "tree": self.tree,
            "case": self.case,
            "dims": {
                "background": q(self.dim_background),
                "bubble_balanced": q(self.dim_bubble),
                "position": self.dim_position,
                "gluing_group": self.dim_gluing_group,
                "scale": 1,
                "top": q(self.dim_top),
            },
            "counts": {"n_prime": self.n_background, "n_double_prime": self.n_bubble, "n_triple_prime": self.n_top},
            "counts_balanced": self.counts_balanced,
            "balanced": self.balanced,
            "integral": self.integral,
            "realizable": self.realizable,
        }


def gluing_consistency_check(t: OBubbleTree) -> GluingReport:
    """Compare dim(glued stratum) with dim(U_1) + dim(U_2^b) + dim(I) + 1 for a one-edge tree.

    A free bubble also moves over X, which adds 4 (``dim_position``); a
    singular bubble sits at its cone point and adds nothing.
    """
    if t.edge_count() != 1:
        raise ValidationError(f"gluing check needs exactly one edge, tree has {t.edge_count()}")
    check = validate_o_tree(t)
    if not check:
        raise ValidationError("; ".join(check.reasons))
    sig = t.base
    glued = target_type(t)
    dim_top = invariant_index(sig, glued)
    dim_bg = invariant_index(sig, t.root_type)
    n_bg = sum(_nonzero(m, a) for m, a in zip(t.root_type.weights, sig.orders))
    n_top = sum(_nonzero(m, a) for m, a in zip(glued.weights, sig.orders))
    realizable: bool | None
    if t.free_children:
        f = t.free_children[0]
        dim_bubble = Fraction(free_balanced_dimension(f))
        group_dim = 3
        position = 4
        n_bub = 0
        case = "free point"
        realizable = f.weight >= 1
        counts_ok = n_top == n_bg
    else:
        link = t.singular_children[0]
        a, b = sig.singularities[link.singularity]
        m0, m1 = link.m_in, link.m_out
        dim_bubble = singular_link_index(a, b, link)
        group_dim = gluing_parameter_group(sig.group, a, m0).dimension
        position = 0
        n_bub = _nonzero(m0, a) + _nonzero(m1, a)
        case = f"m0{'!=' if m0 % a else '=='}0,m{'!=' if m1 % a else '=='}0"
        realizable = _lift_with_chain(a, b, link) is not None
        counts_ok = n_top == -4 + n_bg + n_bub + group_dim + 1
    total = dim_bg + dim_bubble + position + group_dim + 1
    return GluingReport(
        tree=encode_o_tree(t),
        case=case,
        dim_background=dim_bg,
        dim_bubble=dim_bubble,
        dim_position=position,
        dim_gluing_group=group_dim,
        dim_top=dim_top,
        n_background=n_bg,
        n_bubble=n_bub,
        n_top=n_top,
        counts_balanced=counts_ok,
        balanced=total == dim_top,
        integral=all(x.denominator == 1 for x in (dim_bg, dim_bubble, dim_top)),
        realizable=realizable,
    )


# enumeration


@dataclass(frozen=True)
class OTreeCaps:
    depth_cap: int = 2
    weight_cap: int = 2
    max_trees: int = 100_000


def _bubble_budget(sig: OrbifoldSignature, charge: int) -> int:
    if sig.group is Group.SU2:
        return max(charge, 0)
    return max(-charge, 0) // 4


def _free_forests(total: int, depth: int, weight_cap: int) -> list[tuple[FreeBubble, ...]]:
    if depth <= 0:
        return [()] if total == 0 else []

    def max_w(k: Key) -> int:
        return max([k[0]] + [max_w(c) for c in k[1]])

    return [
        tuple(FreeBubble.from_key(k) for k in forest)
        for forest in _forests(total, 0, depth)
        if all(max_w(k) <= weight_cap for k in forest)
    ]


def _chains(
    sig: OrbifoldSignature, i: int, m_in: int, m_final: int, depth: int, caps: OTreeCaps, budget: int
) -> list[tuple[int, SingularBubble]]:
    """(load, chain head) for chains at singularity i starting at weight m_in, ending at m_final."""
    a = sig.singularities[i][0]
    per_link = sig.alpha // a
    out: list[tuple[int, SingularBubble]] = []
    if depth < 1:
        return out
    for w in range(0, caps.weight_cap + 1):
        own = per_link * w
        if own > budget:
            break
        for free_total in range(0, (budget - own) // sig.alpha + 1):
            forests = _free_forests(free_total, depth - 1, caps.weight_cap)
            load = own + sig.alpha * free_total
            for m_out in range(a):
                tails: list[tuple[int, SingularBubble | None]] = []
                if m_out == m_final:
                    tails.append((0, None))
                tails += _chains(sig, i, m_out, m_final, depth - 1, caps, budget - load)
                for tail_load, tail in tails:
                    for forest in forests:
                        out.append(
                            (load + tail_load, SingularBubble(i, m_in, m_out, w, forest, tail))
                        )
    return out


def enumerate_o_trees(
    sig: OrbifoldSignature,
    bundle: BundleType,
    depth_cap: int = 2,
    weight_cap: int = 2,
    *,
    max_trees: int = 100_000,
    include_trivial_tree: bool = True,
) -> list[OBubbleTree]:
    """All valid O-bubble-trees gluing to ``bundle`` within the caps, canonically de-duplicated."""
    if depth_cap < 1 or weight_cap < 1:
        raise ValidationError("caps must be positive")
    target = bundle.normalized(sig)
    check = validate_bundle(sig, target)
    if not check:
        raise ValidationError("; ".join(check.reasons))
    caps = OTreeCaps(depth_cap, weight_cap, max_trees)
    budget = _bubble_budget(sig, target.charge)
    n = len(sig.singularities)

    # per singularity: options (load, root weight m_i^0, chain or None)
    per_sing: list[list[tuple[int, int, SingularBubble | None]]] = []
    for i, (a, _) in enumerate(sig.singularities):
        opts: list[tuple[int, int, SingularBubble | None]] = [(0, target.weights[i], None)]
        for m0 in range(a):
            for load, head in _chains(sig, i, m0, target.weights[i], depth_cap, caps, budget):
                if load > 0:
                    opts.append((load, m0, head))
        per_sing.append(opts)

    found: dict[str, OBubbleTree] = {}
    for free_total in range(0, budget // sig.alpha + 1):
        for forest in _free_forests(free_total, depth_cap, caps.weight_cap):
            base_load = sig.alpha * free_total
            for combo in itertools.product(*per_sing) if n else [()]:
                load = base_load + sum(o[0] for o in combo)
                if load > budget:
                    continue
                if sig.group is Group.SU2:
                    root_charge = target.charge - load
                else:
                    root_charge = target.charge + 4 * load
                root = BundleType(root_charge, tuple(o[1] for o in combo), target.w2_fixed, target.w2_label)
                t = OBubbleTree(sig, root, forest, tuple(o[2] for o in combo if o[2] is not None))
                if not include_trivial_tree and t.edge_count() == 0:
                    continue
                if not validate_o_tree(t, target):
                    continue
                found.setdefault(encode_o_tree(t), t)
                if len(found) > max_trees:
                    raise ResourceLimitExceeded(f"more than {max_trees} O-bubble-trees within caps")
    return [found[k] for k in sorted(found)]


def single_edge_grid(
    a_max: int = 6, k_max: int = 2, groups: tuple[Group, ...] = (Group.SU2, Group.SO3)
) -> Iterator[OBubbleTree]:
    """One-edge trees on X = S^4-like quotients with one cone point of order a <= a_max.

    Covers every coprime b, every pair of residues (m^0, m) and bubble
    weights 1..k_max, on top of a background of charge 0 or 1 (p_1 = 0 or -4
    for SO3).  Also yields the free-point edges.
    """
    for group in groups:
        for a in range(2, a_max + 1):
            for b in range(1, a):
                if gcd(a, b) != 1:
                    continue
                sig = OrbifoldSignature(a, 0, group, ((a, b),))
                for k0 in (0, 1):
                    root_charge = k0 if group is Group.SU2 else -4 * k0
                    for m0 in range(a):
                        root = BundleType(root_charge, (m0,))
                        for k1 in range(1, k_max + 1):
                            for m in range(a):
                                yield OBubbleTree(sig, root, (), (SingularBubble(0, m0, m, k1),))
                            yield OBubbleTree(sig, root, (FreeBubble(k1),))
