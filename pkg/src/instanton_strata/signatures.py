"""Orbifold signatures, equivariant bundle types and invariant gluing groups.

A signature records a cyclic quotient X = M / Z_alpha with isolated
singular points, the i-th modelled on the cone over the lens space
L(a_i, b_i).  A bundle type fixes the charge (c_2 for SU(2), p_1 for SO(3))
and one isotropy weight m_i in Z/a_i per singular point.

SU(2) weight convention: the group acting on the bundle is the double cover
Z_{2 alpha}; at x_i the isotropy weight is really a residue mod 2 a_i and
the central element -1 acts by (-1)^m.  All lifts must share a parity.  A
residue r mod a_i lifts to r and r + a_i, which have different parities when
a_i is odd and the same parity when a_i is even.  So the only constraint on
the projected residues is: the weights at singular points with even a_i
all have the same parity.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Any, Iterator, Sequence

from .errors import ValidationError

SCHEMA_VERSION = "1"


class Group(str, enum.Enum):
    SU2 = "SU2"
    SO3 = "SO3"


@dataclass(frozen=True)
class Check:
    """Boolean verdict carrying the reasons for a failure."""

    ok: bool
    reasons: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def from_reasons(cls, reasons: Sequence[str]) -> Check:
        return cls(not reasons, tuple(reasons))


@dataclass(frozen=True)
class OrbifoldSignature:
    alpha: int
    b2_plus: int
    group: Group
    singularities: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "group", Group(self.group))
        object.__setattr__(
            self, "singularities", tuple((int(a), int(b)) for a, b in self.singularities)
        )

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.singularities)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "b2_plus": self.b2_plus,
            "group": self.group.value,
            "singularities": [{"a": a, "b": b} for a, b in self.singularities],
        }

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> OrbifoldSignature:
        try:
            sings = tuple((int(s["a"]), int(s["b"])) for s in doc.get("singularities", []))
            return cls(int(doc["alpha"]), int(doc["b2_plus"]), Group(doc["group"]), sings)
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed signature document: {exc}") from exc


@dataclass(frozen=True)
class BundleType:
    """Charge plus isotropy weights; ``weights[i]`` is a residue mod a_i."""

    charge: int
    weights: tuple[int, ...] = ()
    w2_fixed: bool = False
    w2_label: str | None = field(default=None, compare=True)

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", tuple(int(m) for m in self.weights))

    def normalized(self, sig: OrbifoldSignature) -> BundleType:
        if len(self.weights) != len(sig.singularities):
            raise ValidationError("one weight per singular point is required")
        ws = tuple(m % a for m, (a, _) in zip(self.weights, sig.singularities))
        return BundleType(self.charge, ws, self.w2_fixed, self.w2_label)

    def to_dict(self, sig: OrbifoldSignature | None = None) -> dict[str, Any]:
        if sig is None:
            weights: list[Any] = list(self.weights)
        else:
            weights = [{"residue": m % a, "modulus": a} for m, (a, _) in zip(self.weights, sig.singularities)]
        doc: dict[str, Any] = {"charge": self.charge, "weights": weights}
        if self.w2_fixed:
            doc["w2_fixed"] = True
            doc["w2_label"] = self.w2_label
        return doc

    @classmethod
    def from_dict(cls, doc: dict[str, Any]) -> BundleType:
        try:
            ws = []
            for w in doc.get("weights", []):
                ws.append(int(w["residue"]) if isinstance(w, dict) else int(w))
            return cls(int(doc["charge"]), tuple(ws), bool(doc.get("w2_fixed", False)), doc.get("w2_label"))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed bundle document: {exc}") from exc


def validate_signature(sig: OrbifoldSignature) -> Check:
    reasons = []
    if sig.alpha < 1:
        reasons.append(f"alpha must be positive, got {sig.alpha}")
    if sig.b2_plus < 0:
        reasons.append(f"b2_plus must be non-negative, got {sig.b2_plus}")
    for i, (a, b) in enumerate(sig.singularities):
        if a < 1:
            reasons.append(f"singularity {i}: order a={a} must be positive")
            continue
        if sig.alpha >= 1 and sig.alpha % a:
            reasons.append(f"singularity {i}: a={a} does not divide alpha={sig.alpha}")
        if gcd(a, b) != 1:
            reasons.append(f"singularity {i}: gcd(a={a}, b={b}) != 1")
    return Check.from_reasons(reasons)


def su2_parity_ok(sig: OrbifoldSignature, weights: Sequence[int]) -> bool:
    parities = {m % 2 for m, (a, _) in zip(weights, sig.singularities) if a % 2 == 0}
    return len(parities) <= 1


def validate_bundle(sig: OrbifoldSignature, bundle: BundleType) -> Check:
    reasons = list(validate_signature(sig).reasons)
    if len(bundle.weights) != len(sig.singularities):
        reasons.append(
            f"{len(bundle.weights)} weights given for {len(sig.singularities)} singular points"
        )
        return Check.from_reasons(reasons)
    for i, (m, (a, _)) in enumerate(zip(bundle.weights, sig.singularities)):
        if a >= 1 and not 0 <= m < a:
            reasons.append(f"weight {i}: {m} is not a residue mod {a}")
    if sig.group is Group.SU2:
        if not su2_parity_ok(sig, bundle.weights):
            reasons.append("SU2 weights at even-order points must share a parity")
        if bundle.w2_fixed:
            reasons.append("w2 is only meaningful for SO3 bundles")
    return Check.from_reasons(reasons)


def require_valid(sig: OrbifoldSignature, bundle: BundleType | None = None) -> None:
    check = validate_signature(sig) if bundle is None else validate_bundle(sig, bundle)
    if not check:
        raise ValidationError("; ".join(check.reasons))


def iter_bundle_types(sig: OrbifoldSignature, charge: int) -> Iterator[BundleType]:
    require_valid(sig)
    for ws in itertools.product(*(range(a) for a in sig.orders)):
        if sig.group is Group.SU2 and not su2_parity_ok(sig, ws):
            continue
        yield BundleType(charge, ws)


def enumerate_bundle_types(sig: OrbifoldSignature, charge: int) -> list[BundleType]:
    """Every weight tuple in Z/a_1 x ... x Z/a_n (parity-filtered for SU2)."""
    return list(iter_bundle_types(sig, charge))


class GluingGroup(enum.Enum):
    FULL_GROUP = 3
    CIRCLE_GROUP = 1
    CENTER_ONLY = 0

    @property
    def dimension(self) -> int:
        return self.value


def gluing_parameter_group(group: Group | str, a: int, m: int) -> GluingGroup:
    """Invariant gluing parameters at a point with isotropy Z_a of weight m.

    The invariant gluing parameters form the centraliser of the isotropy
    image.  A cyclic image is central exactly when m = 0 mod a (for SU2 the
    lift mod 2a is then 0 or a, i.e. the image lies in {1, -1}); otherwise
    it sits in a maximal torus whose centraliser is a circle.
    """
    Group(group)
    if a < 1:
        raise ValidationError(f"isotropy order must be positive, got {a}")
    return GluingGroup.FULL_GROUP if m % a == 0 else GluingGroup.CIRCLE_GROUP
