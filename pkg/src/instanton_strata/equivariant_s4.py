"""Existence of Z_p-invariant instantons on S^4 (Austin's congruence criteria).

Z_p acts on S^4 = C^2 + {infinity} by (z1, z2) -> (w z1, w^q z2), w = e^{2 pi i/p}.
A Z_{2p}-equivariant SU(2) bundle is a triple (k, m, m'): the charge and
the isotropy weights over 0 and infinity, residues mod 2p.

A single triple is admissible when some (a, b) solves

    2 a q = m' + m   (mod 2p)
    2 b   = m' - m   (mod 2p)

with a b = k (mod p).  A general triple carries invariant instantons iff it
splits into a chain of admissible links (k_i, m_i, m'_i) with k_i > 0,
sum k_i = k, m_1 = m and m'_i = m_{i+1}.  The terminal condition defaults
to m'_n = m'; ``literal_terminal=True`` uses m'_n = m instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterator

from .errors import PreconditionFailed, ValidationError


@dataclass(frozen=True)
class S4Action:
    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p < 1:
            raise ValidationError(f"p must be positive, got {self.p}")
        if gcd(self.p, self.q) != 1:
            raise ValidationError(f"q={self.q} must be coprime to p={self.p}")

    @property
    def modulus(self) -> int:
        return 2 * self.p


@dataclass(frozen=True)
class S4Triple:
    k: int
    m: int
    m_prime: int

    def normalized(self, p: int) -> S4Triple:
        return S4Triple(self.k, self.m % (2 * p), self.m_prime % (2 * p))


def congruence_witnesses(action: S4Action, triple: S4Triple) -> frozenset[tuple[int, int]]:
    """All (a, b) in [0, 2p)^2 solving the two weight congruences."""
    n = action.modulus
    t = triple.normalized(action.p)
    s, d = (t.m_prime + t.m) % n, (t.m_prime - t.m) % n
    a_sols = [a for a in range(n) if (2 * a * action.q - s) % n == 0]
    b_sols = [b for b in range(n) if (2 * b - d) % n == 0]
    return frozenset((a, b) for a in a_sols for b in b_sols)


@lru_cache(maxsize=None)
def _link_ok(p: int, q: int, k: int, m: int, m_prime: int) -> bool:
    wit = congruence_witnesses(S4Action(p, q), S4Triple(k, m, m_prime))
    return any((a * b - k) % p == 0 for a, b in wit)


def single_level_admissible(action: S4Action, triple: S4Triple) -> bool:
    if triple.k < 1:
        raise PreconditionFailed(f"admissibility needs k >= 1, got k={triple.k}")
    t = triple.normalized(action.p)
    return _link_ok(action.p, action.q, t.k, t.m, t.m_prime)


def _reachable(action: S4Action, k: int, start: int) -> list[dict[int, tuple[int, int] | None]]:
    """reach[w][r] = back-pointer (weight of last link, previous residue)."""
    n = action.modulus
    reach: list[dict[int, tuple[int, int] | None]] = [dict() for _ in range(k + 1)]
    reach[0][start] = None
    for w in range(1, k + 1):
        for last in range(1, w + 1):
            for r in reach[w - last]:
                for r2 in range(n):
                    if r2 not in reach[w] and _link_ok(action.p, action.q, last, r, r2):
                        reach[w][r2] = (last, r)
    return reach


def find_chain(
    action: S4Action, triple: S4Triple, *, literal_terminal: bool = False
) -> list[S4Triple] | None:
    """A chain of admissible links realising ``triple``, or None."""
    if triple.k < 1:
        raise PreconditionFailed(f"existence needs k >= 1, got k={triple.k}")
    t = triple.normalized(action.p)
    reach = _reachable(action, t.k, t.m)
    end = t.m if literal_terminal else t.m_prime
    if end not in reach[t.k]:
        return None
    chain = []
    w, r = t.k, end
    while w:
        last, prev = reach[w][r]
        chain.append(S4Triple(last, prev, r))
        w, r = w - last, prev
    chain.reverse()
    return chain


def exists_invariant(
    action: S4Action, triple: S4Triple, *, literal_terminal: bool = False
) -> bool:
    return find_chain(action, triple, literal_terminal=literal_terminal) is not None


def admissible_triples(action: S4Action, k_max: int) -> Iterator[S4Triple]:
    """Every (k, m, m') with 1 <= k <= k_max that carries invariant instantons."""
    n = action.modulus
    for m in range(n):
        reach = _reachable(action, k_max, m)
        for k in range(1, k_max + 1):
            for mp in sorted(reach[k]):
                yield S4Triple(k, m, mp)
