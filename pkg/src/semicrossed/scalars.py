"""Exact scalar arithmetic: complex rationals and sums of quadratic surds.

Coefficient functions take values in Q + Qi.  Norm computations then live
in the real field generated by square roots of rationals: the sup norm of
a coefficient function is a value sqrt(re^2 + im^2), and l1-style
quantities are finite sums c_1*sqrt(m_1) + ... + c_r*sqrt(m_r) with
rational c_i.  SqrtSum stores such sums keyed by squarefree radicand.
Square roots of distinct squarefree integers are linearly independent
over Q, so equality is coefficientwise, and order is decided by
adaptive-precision rational enclosures that refine until they separate.
Every comparison is exact; no floats enter until an explicit float() call.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Union

from sympy import factorint

RationalLike = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class Scalar:
    """A complex number with exact rational real and imaginary parts."""

    re: Fraction = _ZERO
    im: Fraction = _ZERO

    @staticmethod
    def of(re: RationalLike, im: RationalLike = 0) -> "Scalar":
        return Scalar(_frac(re), _frac(im))

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def abs_value(self) -> "SqrtSum":
        return SqrtSum.sqrt(self.abs_sq())

    def __add__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re + other.re, self.im + other.im)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return Scalar(self.re - other.re, self.im - other.im)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.re, -self.im)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def scaled(self, c: RationalLike) -> "Scalar":
        c = _frac(c)
        return Scalar(self.re * c, self.im * c)

    def to_complex(self) -> complex:
        return float(self.re) + 1j * float(self.im)

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


ZERO = Scalar()
ONE = Scalar.of(1)


def _squarefree_split(n: int) -> tuple[int, int]:
    """Write n = s*s*m with m squarefree; returns (s, m).  Requires n >= 1."""
    s, m = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def _sqrt_interval(m: int, digits: int) -> tuple[Fraction, Fraction]:
    """Rational enclosure of sqrt(m) with width 10**-digits."""
    scale = 10**digits
    root = isqrt(m * scale * scale)
    return Fraction(root, scale), Fraction(root + 1, scale)


@dataclass(frozen=True)
class SqrtSum:
    """An exact real of the form sum of c*sqrt(m), canonicalized.

    `terms` maps squarefree positive radicands to nonzero rational
    coefficients, stored as a sorted tuple so instances are hashable.
    Rationals embed with radicand 1.  Closed under +, -, * and scaling;
    total order decided exactly.
    """

    terms: tuple[tuple[int, Fraction], ...] = ()

    @staticmethod
    def _from_dict(d: dict[int, Fraction]) -> "SqrtSum":
        return SqrtSum(tuple(sorted((m, c) for m, c in d.items() if c)))

    @staticmethod
    def of(value: RationalLike) -> "SqrtSum":
        q = _frac(value)
        return SqrtSum(((1, q),)) if q else SqrtSum()

    @staticmethod
    def sqrt(value: RationalLike) -> "SqrtSum":
        q = _frac(value)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if not q:
            return SqrtSum()
        # sqrt(n/d) = sqrt(n*d)/d
        s, m = _squarefree_split(q.numerator * q.denominator)
        return SqrtSum(((m, Fraction(s, q.denominator)),))

    def is_zero(self) -> bool:
        return not self.terms

    def as_fraction(self) -> Fraction | None:
        """The value as a rational, or None if genuinely irrational."""
        if not self.terms:
            return _ZERO
        if len(self.terms) == 1 and self.terms[0][0] == 1:
            return self.terms[0][1]
        return None

    def __add__(self, other: "SqrtSum") -> "SqrtSum":
        d = dict(self.terms)
        for m, c in other.terms:
            d[m] = d.get(m, _ZERO) + c
        return SqrtSum._from_dict(d)

    def __sub__(self, other: "SqrtSum") -> "SqrtSum":
        return self + (-other)

    def __neg__(self) -> "SqrtSum":
        return SqrtSum(tuple((m, -c) for m, c in self.terms))

    def scaled(self, c: RationalLike) -> "SqrtSum":
        c = _frac(c)
        if not c:
            return SqrtSum()
        return SqrtSum(tuple((m, x * c) for m, x in self.terms))

    def __mul__(self, other: "SqrtSum") -> "SqrtSum":
        # sqrt(a)*sqrt(b) = g*sqrt((a/g)*(b/g)) with g = gcd(a, b); the
        # product of coprime squarefree numbers is squarefree, so no
        # factoring is needed here.
        from math import gcd

        d: dict[int, Fraction] = {}
        for ma, ca in self.terms:
            for mb, cb in other.terms:
                g = gcd(ma, mb)
                m = (ma // g) * (mb // g)
                d[m] = d.get(m, _ZERO) + ca * cb * g
        return SqrtSum._from_dict(d)

    def sign(self) -> int:
        if not self.terms:
            return 0
        q = self.as_fraction()
        if q is not None:
            return -1 if q < 0 else 1
        digits = 20
        while True:
            lo = hi = _ZERO
            for m, c in self.terms:
                a, b = _sqrt_interval(m, digits)
                if c >= 0:
                    lo += c * a
                    hi += c * b
                else:
                    lo += c * b
                    hi += c * a
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            digits *= 2

    def _coerce(self, other) -> "SqrtSum":
        if isinstance(other, SqrtSum):
            return other
        if isinstance(other, (int, Fraction)):
            return SqrtSum.of(other)
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self) -> int:
        return hash(self.terms)

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other) -> bool:
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __float__(self) -> float:
        from math import sqrt

        return sum(float(c) * sqrt(m) for m, c in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms:
            parts.append(str(c) if m == 1 else f"{c}*sqrt({m})")
        return " + ".join(parts)
