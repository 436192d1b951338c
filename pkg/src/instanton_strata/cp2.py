"""Matrix model for stable rank-2 bundles on CP^2 with c_1 = -1, c_2 = 2.

Such a bundle is recorded by a 2x3 complex matrix alpha of rank 2, up to
the action of G on the left.  Its jump line is the kernel point of alpha.
The conic of jump lines of the second kind is det(alpha(z)^T alpha(z)) = 0,
which splits as a pair of lines with coordinates u = r1 + i r2 and
v = r1 - i r2 (r1, r2 the rows of alpha).  ``phi`` inverts this.

Scalars are exact Gaussian rationals.  All identities in this module are
algebraic over Q(i), so the round-trip tests are equality tests.  Plain
Python ``complex`` values are also accepted; zero tests then use
``FLOAT_EPS``.

Projective points are normalised so that the first non-zero coordinate
(lowest index) equals 1.
"""

from __future__ import annotations

import cmath
import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence, Union

from .errors import DegeneratePair, InvalidAlpha, ValidationError
from .index import ManifoldData, dim_manifold_moduli
from .signatures import Group

FLOAT_EPS = 1e-9


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, x: Any) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, complex):
            raise ValidationError("floating-point input cannot be made exact")
        return cls(Fraction(x))

    def __add__(self, other: Any) -> GaussianRational:
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other: Any) -> GaussianRational:
        return self + (-GaussianRational.coerce(other))

    def __rsub__(self, other: Any) -> GaussianRational:
        return GaussianRational.coerce(other) - self

    def __mul__(self, other: Any) -> GaussianRational:
        o = GaussianRational.coerce(other)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, other: Any) -> GaussianRational:
        o = GaussianRational.coerce(other)
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * o.conjugate()
        return GaussianRational(num.re / n, num.im / n)

    def __rtruediv__(self, other: Any) -> GaussianRational:
        return GaussianRational.coerce(other) / self

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussianRational(other)
        if not isinstance(other, GaussianRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __str__(self) -> str:
        def q(x: Fraction) -> str:
            return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        if not self.im:
            return q(self.re)
        mag = "" if abs(self.im) == 1 else q(abs(self.im))
        if not self.re:
            return f"{'-' if self.im < 0 else ''}{mag}i"
        sign = "+" if self.im > 0 else "-"
        return f"{q(self.re)}{sign}{mag}i"


I = GaussianRational(0, 1)
Scalar = Union[GaussianRational, complex]


def gq(re: Any, im: Any = 0) -> GaussianRational:
    return GaussianRational(Fraction(re), Fraction(im))


def _is_zero(x: Scalar) -> bool:
    if isinstance(x, complex):
        return abs(x) < FLOAT_EPS
    return not x


def _unit(x: Scalar) -> Scalar:
    return 1j if isinstance(x, complex) else I


Vector = tuple  # tuple of three scalars


def cross(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]


def is_zero_vector(u: Sequence[Scalar]) -> bool:
    return all(_is_zero(x) for x in u)


def normalize_point(u: Sequence[Scalar]) -> Vector:
    """Scale so that the first non-zero coordinate is 1."""
    for x in u:
        if not _is_zero(x):
            return tuple(y / x for y in u)
    raise ValidationError("the zero vector is not a projective point")


def projectively_equal(u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
    return is_zero_vector(cross(u, v))


def _point_sort_key(u: Vector) -> tuple:
    def part(x: Scalar) -> tuple:
        if isinstance(x, complex):
            return (round(x.real, 9), round(x.imag, 9))
        return (x.re, x.im)

    return tuple(part(x) for x in u)


@dataclass(frozen=True)
class AlphaMatrix:
    rows: tuple[Vector, Vector]

    def __post_init__(self) -> None:
        if len(self.rows) != 2 or any(len(r) != 3 for r in self.rows):
            raise ValidationError("alpha must be a 2x3 matrix")
        object.__setattr__(self, "rows", tuple(tuple(r) for r in self.rows))

    @classmethod
    def exact(cls, rows: Sequence[Sequence[Any]]) -> AlphaMatrix:
        """Rows of ints, Fractions or Gaussian rationals."""
        return cls(tuple(tuple(GaussianRational.coerce(x) for x in r) for r in rows))

    def rank_at_least_two(self) -> bool:
        return not is_zero_vector(cross(*self.rows))

    def apply(self, z: Sequence[Scalar]) -> tuple[Scalar, Scalar]:
        return (dot(self.rows[0], z), dot(self.rows[1], z))

    def gram(self) -> tuple[tuple[Scalar, ...], ...]:
        """alpha^T alpha (bilinear, no conjugation)."""
        r1, r2 = self.rows
        return tuple(tuple(r1[i] * r1[j] + r2[i] * r2[j] for j in range(3)) for i in range(3))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]


def _coerce_point(u: Sequence[Any]) -> Vector:
    if any(isinstance(x, complex) for x in u):
        return tuple(complex(x) for x in u)
    return tuple(GaussianRational.coerce(x) for x in u)


@dataclass(frozen=True, eq=False)
class LinePair:
    """Unordered pair of distinct projective points.

    The points keep the order they were given in (``phi`` reads them in that
    order); equality and hashing use the canonical sorted order.
    """

    first: Vector
    second: Vector

    @classmethod
    def of(cls, u: Sequence[Any], v: Sequence[Any]) -> LinePair:
        u, v = _coerce_point(u), _coerce_point(v)
        if is_zero_vector(u) or is_zero_vector(v):
            raise ValidationError("the zero vector is not a projective point")
        if projectively_equal(u, v):
            raise DegeneratePair("the two points coincide projectively")
        return cls(normalize_point(u), normalize_point(v))

    def points(self) -> tuple[Vector, Vector]:
        return (self.first, self.second)

    def canonical(self) -> tuple[Vector, Vector]:
        a, b = sorted(self.points(), key=_point_sort_key)
        return (a, b)

    def swapped(self) -> LinePair:
        return LinePair(self.second, self.first)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinePair):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(tuple(_point_sort_key(p) for p in self.canonical()))

    def intersection(self) -> Vector:
        """The point common to the two lines with these coordinates."""
        return normalize_point(cross(self.first, self.second))

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in p] for p in self.canonical()]


def jump_line(alpha: AlphaMatrix) -> Vector:
    z = cross(*alpha.rows)
    if is_zero_vector(z):
        raise InvalidAlpha("alpha has rank < 2")
    return normalize_point(z)


def second_kind_pair(alpha: AlphaMatrix) -> LinePair:
    if not alpha.rank_at_least_two():
        raise InvalidAlpha("alpha has rank < 2")
    r1, r2 = alpha.rows
    i = _unit(r1[0])
    u = tuple(x + i * y for x, y in zip(r1, r2))
    v = tuple(x - i * y for x, y in zip(r1, r2))
    return LinePair.of(u, v)


def phi(pair: LinePair) -> AlphaMatrix:
    u, v = pair.points()
    if projectively_equal(u, v):
        raise DegeneratePair("phi needs two distinct points")
    i = _unit(u[0])
    r1 = tuple((x + y) / 2 for x, y in zip(u, v))
    r2 = tuple((x - y) / (2 * i) for x, y in zip(u, v))
    return AlphaMatrix((r1, r2))


def same_orbit(a1: AlphaMatrix, a2: AlphaMatrix) -> bool:
    """alpha_1^T alpha_1 and alpha_2^T alpha_2 proportional (all 2x2 minors vanish)."""
    g1 = [x for row in a1.gram() for x in row]
    g2 = [x for row in a2.gram() for x in row]
    if all(_is_zero(x) for x in g1) or all(_is_zero(x) for x in g2):
        return False
    return all(_is_zero(g1[i] * g2[j] - g1[j] * g2[i]) for i in range(9) for j in range(i + 1, 9))


class FixedKind(str, enum.Enum):
    FIXED_POINTWISE = "FixedPointwise"
    FIXED_SWAPPED = "FixedSwapped"
    NOT_FIXED = "NotFixed"


def _point_fixed(u: Vector) -> bool:
    # g scales z0 by a non-trivial root of unity
    return _is_zero(u[0]) or (_is_zero(u[1]) and _is_zero(u[2]))


def za_fixed(pair: LinePair, a: int) -> FixedKind:
    """How g: [z0, z1, z2] -> [e^{2 pi i/a} z0, z1, z2] acts on the pair."""
    if a < 2:
        raise ValidationError(f"a must be at least 2, got {a}")
    u, v = pair.points()
    if _point_fixed(u) and _point_fixed(v):
        return FixedKind.FIXED_POINTWISE
    # g(u) = v and g(v) = u force g^2 to fix u, hence zeta^2 = 1
    if a == 2 and projectively_equal((-u[0], u[1], u[2]), v):
        return FixedKind.FIXED_SWAPPED
    return FixedKind.NOT_FIXED


def za_fixed_bruteforce(pair: LinePair, a: int) -> FixedKind:
    """Floating-point orbit check: apply g and compare unordered pairs."""
    zeta = cmath.exp(2j * cmath.pi / a)
    u, v = ([complex(x) for x in p] for p in pair.points())

    def g(p: list[complex]) -> list[complex]:
        return [zeta * p[0], p[1], p[2]]

    def eq(p: list[complex], q: list[complex]) -> bool:
        return all(abs(c) < FLOAT_EPS for c in cross(p, q))

    if eq(g(u), u) and eq(g(v), v):
        return FixedKind.FIXED_POINTWISE
    if eq(g(u), v) and eq(g(v), u):
        return FixedKind.FIXED_SWAPPED
    return FixedKind.NOT_FIXED


def random_gaussian_rational(rng: random.Random, bound: int = 5) -> GaussianRational:
    def part() -> Fraction:
        return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))

    return GaussianRational(part(), part())


def random_alpha(rng: random.Random, bound: int = 5) -> AlphaMatrix:
    """A random rank-2 matrix with Gaussian-rational entries."""
    while True:
        alpha = AlphaMatrix(
            tuple(tuple(random_gaussian_rational(rng, bound) for _ in range(3)) for _ in range(2))
        )
        if alpha.rank_at_least_two():
            return alpha


def random_pair(rng: random.Random, bound: int = 5) -> LinePair:
    while True:
        u = tuple(random_gaussian_rational(rng, bound) for _ in range(3))
        v = tuple(random_gaussian_rational(rng, bound) for _ in range(3))
        if not is_zero_vector(u) and not is_zero_vector(v) and not projectively_equal(u, v):
            return LinePair.of(u, v)


def dim_checks() -> dict[str, Any]:
    """Dimension bookkeeping for SO(3) instantons on CP^2 (b2+ = 1)."""

    def d(p1: int) -> int:
        return dim_manifold_moduli(ManifoldData(1, Group.SO3, p1))

    base, fibre = 4, 4  # CP^2 and CP^2 minus a line, real dimensions
    report = {
        "p1=-3": d(-3),
        "p1=-7": d(-7),
        "p1=-11": d(-11),
        "fibre_bundle": {"base": base, "fibre": fibre, "total": base + fibre},
    }
    report["ok"] = report["p1=-3"] == 0 and report["p1=-7"] == 8 == base + fibre and report["p1=-11"] == 16
    return report


def demo_trace(alpha: AlphaMatrix) -> dict[str, Any]:
    """alpha -> jump line -> second-kind pair -> phi -> orbit invariants."""
    z = jump_line(alpha)
    pair = second_kind_pair(alpha)
    back = phi(pair)
    return {
        "alpha": alpha.to_json(),
        "jump_line": [str(x) for x in z],
        "alpha_times_jump_line": [str(x) for x in alpha.apply(z)],
        "second_kind_pair": pair.to_json(),
        "pair_intersection": [str(x) for x in pair.intersection()],
        "phi_of_pair": back.to_json(),
        "same_orbit": same_orbit(alpha, back),
        "round_trip_pair": second_kind_pair(back) == pair,
    }
