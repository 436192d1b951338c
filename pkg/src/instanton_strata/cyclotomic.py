"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element of Q(zeta_n) is stored as a vector of n rational coefficients
c_0..c_{n-1} standing for sum c_j zeta_n^j, i.e. an element of the group ring
Q[x]/(x^n - 1).  Several vectors represent the same field element; the normal
form is the remainder modulo the n-th cyclotomic polynomial Phi_n, which is
unique because 1, zeta, ..., zeta^(phi(n)-1) is a basis.  Equality,
hashing and ``is_rational`` all go through that remainder, so they are exact.

The trigonometric sums used by the index formulas are evaluated through

    cot(pi t / a)       = i (zeta_a^t + 1) / (zeta_a^t - 1)
    sin^2(pi t / a)     = (2 - zeta_a^t - zeta_a^-t) / 4
    1 / (u - 1)         = (1/d) sum_{s=0}^{d-1} s u^s   for u a primitive d-th root

The last identity avoids general field inversion entirely.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

from .errors import ValidationError

__all__ = [
    "CyclotomicElement",
    "cyclotomic_polynomial",
    "root_of_unity",
    "cot_element",
    "sin_squared_element",
    "cot_sum",
    "cot_sum_element",
    "cos_sum",
]


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _poly_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic with integer coefficients, low degree first
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for k, dk in enumerate(den):
                num[i - dn + k] -= c * dk
    if any(num[:dn]):
        raise ArithmeticError("non-exact polynomial division")
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValidationError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_exact_div(poly, cyclotomic_polynomial(d))
    return tuple(poly)


def _reduce_int(num: Sequence[int], n: int) -> list[int]:
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    r = list(num)
    for i in range(len(r) - 1, deg - 1, -1):
        c = r[i]
        if c:
            r[i] = 0
            for k in range(deg):
                if phi[k]:
                    r[i - deg + k] -= c * phi[k]
    return r[:deg]


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class CyclotomicElement:
    """Immutable element of Q(zeta_n).

    Internally an integer numerator vector over one positive common
    denominator; all arithmetic stays in Python ints.
    """

    __slots__ = ("_order", "_num", "_den", "_normal")

    def __init__(self, order: int, coefficients: Iterable[Fraction | int]):
        if order < 1:
            raise ValidationError(f"cyclotomic order must be positive, got {order}")
        folded = [Fraction(0)] * order
        for j, c in enumerate(coefficients):
            if c:
                folded[j % order] += Fraction(c)
        den = 1
        for c in folded:
            den = _lcm(den, c.denominator)
        self._init(order, [int(c * den) for c in folded], den)

    def _init(self, order: int, num: list[int], den: int) -> None:
        self._order = order
        self._num = tuple(num)
        self._den = den
        self._normal: tuple[Fraction, ...] | None = None

    @classmethod
    def _raw(cls, order: int, num: list[int], den: int = 1) -> CyclotomicElement:
        obj = cls.__new__(cls)
        obj._init(order, num, den)
        return obj

    @classmethod
    def from_rational(cls, order: int, value: Fraction | int) -> CyclotomicElement:
        value = Fraction(value)
        num = [0] * order
        num[0] = value.numerator
        return cls._raw(order, num, value.denominator)

    @classmethod
    def from_terms(cls, order: int, terms: dict[int, Fraction | int]) -> CyclotomicElement:
        """Build sum c * zeta^e from an exponent -> coefficient mapping."""
        vec = [Fraction(0)] * order
        for e, c in terms.items():
            vec[e % order] += Fraction(c)
        return cls(order, vec)

    @classmethod
    def from_integer_vector(cls, order: int, numerators: Sequence[int], denominator: int = 1) -> CyclotomicElement:
        """sum (numerators[j] / denominator) zeta^j, folding indices mod order."""
        if denominator <= 0:
            raise ValidationError("denominator must be positive")
        num = [0] * order
        for j, c in enumerate(numerators):
            num[j % order] += c
        return cls._raw(order, num, denominator)

    @property
    def order(self) -> int:
        return self._order

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def normal_form(self) -> tuple[Fraction, ...]:
        """Coefficients of the remainder modulo Phi_n (length phi(n))."""
        if self._normal is None:
            self._normal = tuple(Fraction(c, self._den) for c in _reduce_int(self._num, self._order))
        return self._normal

    def is_rational(self) -> bool:
        nf = self.normal_form()
        return all(c == 0 for c in nf[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.normal_form()[0]

    def to_complex(self) -> complex:
        """Floating-point value, for diagnostics only."""
        n = self._order
        return sum(c * cmath.exp(2j * cmath.pi * j / n) for j, c in enumerate(self._num)) / self._den

    def embed(self, order: int) -> CyclotomicElement:
        """The same field element viewed inside Q(zeta_order); order must be a multiple."""
        if order % self._order:
            raise ValidationError(f"cannot embed Q(zeta_{self._order}) into Q(zeta_{order})")
        step = order // self._order
        num = [0] * order
        for j, c in enumerate(self._num):
            num[j * step] = c
        return CyclotomicElement._raw(order, num, self._den)

    def _coerce(self, other: object) -> CyclotomicElement | None:
        if isinstance(other, CyclotomicElement):
            if other._order == self._order:
                return other
            raise ValidationError(
                f"order mismatch: {self._order} vs {other._order}; embed first"
            )
        if isinstance(other, (int, Fraction)):
            return CyclotomicElement.from_rational(self._order, other)
        return None

    def __add__(self, other: object) -> CyclotomicElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        den = _lcm(self._den, o._den)
        f, g = den // self._den, den // o._den
        return CyclotomicElement._raw(
            self._order, [x * f + y * g for x, y in zip(self._num, o._num)], den
        )

    __radd__ = __add__

    def __neg__(self) -> CyclotomicElement:
        return CyclotomicElement._raw(self._order, [-x for x in self._num], self._den)

    def __sub__(self, other: object) -> CyclotomicElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: object) -> CyclotomicElement:
        return (-self) + other

    def __mul__(self, other: object) -> CyclotomicElement:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self._order
        out = [0] * n
        right = [(k, c) for k, c in enumerate(o._num) if c]
        for j, a in enumerate(self._num):
            if not a:
                continue
            for k, c in right:
                out[(j + k) % n] += a * c
        return CyclotomicElement._raw(n, out, self._den * o._den)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> CyclotomicElement:
        if exponent < 0:
            raise ValueError("negative powers are not supported")
        result = CyclotomicElement.from_rational(self._order, 1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.normal_form()[0] == other
        if not isinstance(other, CyclotomicElement):
            return NotImplemented
        if other._order != self._order:
            n = _lcm(self._order, other._order)
            return self.embed(n).normal_form() == other.embed(n).normal_form()
        return self.normal_form() == other.normal_form()

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.normal_form()[0])
        return hash((self._order, self.normal_form()))

    def __repr__(self) -> str:
        terms = [f"{c}*z^{j}" for j, c in enumerate(self.normal_form()) if c]
        return f"CyclotomicElement({self._order}, {' + '.join(terms) or '0'})"


def root_of_unity(n: int, j: int) -> CyclotomicElement:
    """zeta_n ** (j mod n)."""
    if n < 1:
        raise ValidationError(f"root_of_unity needs n >= 1, got {n}")
    return CyclotomicElement.from_terms(n, {j % n: 1})


def _inverse_of_root_minus_one(order: int, t: int) -> CyclotomicElement:
    # 1/(zeta^t - 1) for zeta^t != 1
    d = order // gcd(t, order)
    if d == 1:
        raise ZeroDivisionError("zeta^t = 1 has no inverse of (zeta^t - 1)")
    return CyclotomicElement.from_terms(order, {t * s: Fraction(s, d) for s in range(d)})


def cot_element(a: int, t: int) -> CyclotomicElement:
    """cot(pi t / a) as an element of Q(zeta_L) with L = lcm(a, 4)."""
    L = a * 4 // gcd(a, 4)
    step = L // a
    i = root_of_unity(L, L // 4)
    num = CyclotomicElement.from_terms(L, {step * t: 1, 0: 1})
    return i * num * _inverse_of_root_minus_one(L, step * t)


def sin_squared_element(a: int, t: int) -> CyclotomicElement:
    """sin^2(pi t / a) as an element of Q(zeta_a)."""
    if t % a == 0:
        return CyclotomicElement.from_rational(a, 0)
    return CyclotomicElement.from_terms(
        a, {0: Fraction(1, 2), t: Fraction(-1, 4), -t: Fraction(-1, 4)}
    )


def _check_cot_args(a: int, b: int) -> None:
    if a < 1:
        raise ValidationError(f"cot_sum needs a >= 1, got a={a}")
    if gcd(a, b) != 1:
        raise ValidationError(f"cot_sum needs gcd(a, b) = 1, got a={a}, b={b}")


def _pack(terms: Iterable[tuple[int, int]], width: int) -> int:
    return sum(c << (8 * width * e) for e, c in terms)


@lru_cache(maxsize=512)
def _cot_products(a: int, b: int) -> tuple[tuple[int, ...], ...]:
    """Integer vectors a^2 * cot(pi j b/a) cot(pi j/a), j = 1..a-1.

    Each entry lives in Z[x]/(x^a - 1).  The common scale a^2 clears the
    d^2 denominators of the inverse formula since every d divides a.
    All three factors have coefficients of one sign, so the product is
    taken by Kronecker substitution (big-int multiplication) and folded.
    """
    # coefficients of the unfolded product are at most 4 * (a^2 / 2)^2
    width = (a ** 4).bit_length() // 8 + 2
    rows = []
    for j in range(1, a):
        d = a // gcd(j, a)
        scale = (a // d) ** 2
        # (zeta^{jb} + 1)(zeta^j + 1), negated below
        head = _pack(((j * b % a + j, 1), (j * b % a, 1), (j, 1), (0, 1)), width)
        inv_b = _pack(((j * b * s % a, s) for s in range(1, d)), width)
        inv_1 = _pack(((j * s % a, s) for s in range(1, d)), width)
        raw = (head * inv_b * inv_1).to_bytes(width * 4 * a, "little")
        vec = [0] * a
        for k in range(4 * a):
            c = int.from_bytes(raw[k * width:(k + 1) * width], "little")
            if c:
                vec[k % a] -= c * scale
        rows.append(tuple(vec))
    return tuple(rows)


def cot_sum_element(a: int, b: int, m: int) -> CyclotomicElement:
    """(2/a) sum_{j=1}^{a-1} cot(pi j b/a) cot(pi j/a) sin^2(pi j m/a) in Q(zeta_a)."""
    _check_cot_args(a, b)
    if a == 1:
        return CyclotomicElement.from_rational(1, 0)
    total = [0] * a
    for j, row in enumerate(_cot_products(a, b), start=1):
        shift = j * m % a
        if shift == 0:
            continue  # sin^2 vanishes
        for e, c in enumerate(row):
            if c:
                total[e] += 2 * c
                total[(e + shift) % a] -= c
                total[(e - shift) % a] -= c
    # row scale a^2, 1/4 from sin^2, 2/a prefactor
    den = 2 * a ** 3
    return CyclotomicElement.from_integer_vector(a, total, den)


@lru_cache(maxsize=None)
def cot_sum(a: int, b: int, m: int) -> Fraction:
    """Exact value of (2/a) sum_{j=1}^{a-1} cot(pi j b/a) cot(pi j/a) sin^2(pi j m/a)."""
    elem = cot_sum_element(a, b, m)
    if not elem.is_rational():
        raise ArithmeticError(f"cot_sum({a}, {b}, {m}) did not reduce to a rational")
    return elem.to_rational()


def cos_sum(p: int, m: int) -> int:
    """sum_{j=1}^{p-1} cos(2 pi j m / p), summed in Q(zeta_p)."""
    if p < 1:
        raise ValidationError(f"cos_sum needs p >= 1, got {p}")
    # cos(2 pi t / p) = (zeta^t + zeta^-t) / 2
    num = [0] * p
    for j in range(1, p):
        num[(j * m) % p] += 1
        num[(-j * m) % p] += 1
    value = CyclotomicElement.from_integer_vector(p, num, 2).to_rational()
    closed = p - 1 if m % p == 0 else -1
    assert value == closed, (p, m, value)
    return int(value)
