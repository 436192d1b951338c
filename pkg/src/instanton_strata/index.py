"""Expected dimensions of ASD moduli spaces, plain and invariant."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cyclotomic import cot_sum
from .equivariant_s4 import S4Action, S4Triple, exists_invariant
from .errors import NotRealizable, PreconditionFailed
from .signatures import BundleType, Group, OrbifoldSignature, require_valid


@dataclass(frozen=True)
class ManifoldData:
    b2_plus: int
    group: Group
    charge: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "group", Group(self.group))


def charge_term(group: Group, charge: int) -> int:
    """8 c_2 for SU2, -2 p_1 for SO3."""
    return 8 * charge if Group(group) is Group.SU2 else -2 * charge


def dim_manifold_moduli(data: ManifoldData) -> int:
    return charge_term(data.group, data.charge) - 3 * (1 + data.b2_plus)


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NotRealizable(f"{what} has non-integral expected dimension {value}")
    return value.numerator


def invariant_index(sig: OrbifoldSignature, bundle: BundleType) -> Fraction:
    """The exact (possibly non-integral) invariant index of ``bundle``."""
    require_valid(sig, bundle)
    total = Fraction(charge_term(sig.group, bundle.charge), sig.alpha) - 3 * (1 + sig.b2_plus)
    for m, (a, b) in zip(bundle.weights, sig.singularities):
        if m % a:
            total += 1
        total += cot_sum(a, b, m)
    return total


def dim_invariant_moduli(sig: OrbifoldSignature, bundle: BundleType) -> int:
    return _as_int(invariant_index(sig, bundle), f"bundle {bundle}")


def nonzero_weight_count(p: int, triple: S4Triple) -> int:
    """How many of m, m' (as a multiset) are not 0 or p mod 2p."""
    return sum(1 for x in (triple.m, triple.m_prime) if x % p)


def s4_index(p: int, q: int, triple: S4Triple) -> Fraction:
    """8k/p - 3 + n + cot-sum difference, without the existence check."""
    return (
        Fraction(8 * triple.k, p)
        - 3
        + nonzero_weight_count(p, triple)
        + cot_sum(p, q, triple.m_prime)
        - cot_sum(p, q, triple.m)
    )


def dim_s4_invariant(p: int, q: int, triple: S4Triple, *, literal_terminal: bool = False) -> int:
    action = S4Action(p, q)
    if triple.k < 1 or not exists_invariant(action, triple, literal_terminal=literal_terminal):
        raise PreconditionFailed(f"no Z_{p}-invariant instantons for {triple} with q={q}")
    return _as_int(s4_index(p, q, triple), f"triple {triple} (p={p}, q={q})")


def dim_s4_invariant_balanced(p: int, q: int, triple: S4Triple, *, literal_terminal: bool = False) -> int:
    """Dimension after dividing out the symmetries that preserve the action.

    For p >= 2 only dilations commute with the rotation, so 1 is removed;
    for the trivial group translations go too and 5 is removed.
    """
    removed = 5 if p == 1 else 1
    return dim_s4_invariant(p, q, triple, literal_terminal=literal_terminal) - removed
